//! Discretization of the frequency axis.
//!
//! The semi-infinite frequency-domain constraints are enforced on a finite
//! grid. Two constructions are available: a per-band [`uniform_grid`] and an
//! [`afp_grid`] that picks approximate Fekete points, which concentrate
//! where the basis changes fastest (near band edges) and give much better
//! conditioning for the same point count.
//!
//! Frequencies are kept as exact fractions of pi; they are multiplied out to
//! radians only inside trigonometric evaluation, so grids are bit-identical
//! across platforms. A frequency shared by two touching bands appears once,
//! with the intersection of both bands' bounds.

use crate::spec::{basis_eval, FilterSpec};

/// One constraint point: a frequency (as a fraction of pi), the response
/// bounds that apply there, and the index of the band it came from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridPoint {
    pub omega_pi: f64,
    pub lower: f64,
    pub upper: f64,
    pub band: usize,
}

/// Result of approximate Fekete point selection.
#[derive(Debug, Clone)]
pub struct AfpGrid {
    pub points: Vec<GridPoint>,
    /// True when the basis was too rank-deficient on the candidate set to
    /// select the requested number of points, and a uniform grid of the same
    /// target size was returned instead.
    pub fell_back: bool,
}

fn linspace(a: f64, b: f64, n: usize) -> impl Iterator<Item = f64> {
    let step = if n > 1 { (b - a) / (n - 1) as f64 } else { 0.0 };
    (0..n).map(move |i| if i + 1 == n { b } else { a + step * i as f64 })
}

/// Sort by frequency and merge points with identical frequencies into one
/// constraint with the tighter (intersected) bounds.
fn sort_merge(points: &mut Vec<GridPoint>) {
    points.sort_by(|p, q| p.omega_pi.total_cmp(&q.omega_pi).then(p.band.cmp(&q.band)));
    let mut out: Vec<GridPoint> = Vec::with_capacity(points.len());
    for p in points.drain(..) {
        match out.last_mut() {
            Some(q) if q.omega_pi == p.omega_pi => {
                q.lower = q.lower.max(p.lower);
                q.upper = q.upper.min(p.upper);
            }
            _ => out.push(p),
        }
    }
    *points = out;
}

/// Uniform grid with `size` points split over the bands in proportion to
/// their widths. Every band keeps at least its two edge points.
pub fn uniform_grid(spec: &FilterSpec, size: usize) -> Vec<GridPoint> {
    let total: f64 = spec.bands.iter().map(|b| b.width()).sum();
    let mut points = Vec::with_capacity(size + 2 * spec.bands.len());
    for (band, b) in spec.bands.iter().enumerate() {
        let share = (size as f64 * b.width() / total).round() as usize;
        let n = share.max(2);
        points.extend(linspace(b.from_pi, b.to_pi, n).map(|omega_pi| GridPoint {
            omega_pi,
            lower: b.lower,
            upper: b.upper,
            band,
        }));
    }
    sort_merge(&mut points);
    points
}

/// Approximate Fekete points for `target` grid points, drawn from a uniform
/// candidate set `oversample` times as large.
///
/// The selection runs column-pivoted Gram-Schmidt on the matrix whose
/// columns are candidate points evaluated under the first `target` basis
/// functions; the pivot order greedily maximizes the volume of the selected
/// submatrix. Band edges are appended afterwards unless `force_edges` is
/// off.
pub fn afp_grid(spec: &FilterSpec, target: usize, oversample: usize, force_edges: bool) -> AfpGrid {
    let candidates = uniform_grid(spec, target * oversample.max(1));
    let k = candidates.len();
    if k <= target {
        let mut points = candidates;
        if force_edges {
            append_edges(spec, &mut points);
        }
        sort_merge(&mut points);
        return AfpGrid {
            points,
            fell_back: false,
        };
    }

    // Columns of the (target x k) matrix, one per candidate point.
    let mut cols: Vec<Vec<f64>> = candidates
        .iter()
        .map(|p| {
            (0..target)
                .map(|m| basis_eval(spec.filter_type, m, p.omega_pi * std::f64::consts::PI))
                .collect()
        })
        .collect();

    let norm2 = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>();
    let initial_max = cols.iter().map(|c| norm2(c)).fold(0.0f64, f64::max).sqrt();
    let tol = 1e-12 * initial_max.max(1.0);

    let mut selected: Vec<usize> = Vec::with_capacity(target);
    let mut taken = vec![false; k];
    for _ in 0..target {
        let mut best = usize::MAX;
        let mut best_norm = -1.0;
        for (i, c) in cols.iter().enumerate() {
            if taken[i] {
                continue;
            }
            let n = norm2(c).sqrt();
            if n > best_norm {
                best_norm = n;
                best = i;
            }
        }
        if best == usize::MAX || best_norm <= tol {
            // Rank deficient: the remaining candidates add nothing new.
            let mut points = uniform_grid(spec, target);
            if force_edges {
                append_edges(spec, &mut points);
            }
            sort_merge(&mut points);
            return AfpGrid {
                points,
                fell_back: true,
            };
        }
        taken[best] = true;
        selected.push(best);
        let q: Vec<f64> = cols[best].iter().map(|x| x / best_norm).collect();
        for (i, c) in cols.iter_mut().enumerate() {
            if taken[i] {
                continue;
            }
            let dot: f64 = q.iter().zip(c.iter()).map(|(a, b)| a * b).sum();
            for (cv, qv) in c.iter_mut().zip(q.iter()) {
                *cv -= dot * qv;
            }
        }
    }

    let mut points: Vec<GridPoint> = selected.into_iter().map(|i| candidates[i]).collect();
    if force_edges {
        append_edges(spec, &mut points);
    }
    sort_merge(&mut points);
    AfpGrid {
        points,
        fell_back: false,
    }
}

/// The default design grid: approximate Fekete points targeting four points
/// per coefficient with 16x oversampling and forced band edges.
pub fn default_design_grid(spec: &FilterSpec) -> AfpGrid {
    afp_grid(spec, 4 * spec.coefficient_count(), 16, true)
}

fn append_edges(spec: &FilterSpec, points: &mut Vec<GridPoint>) {
    for (band, b) in spec.bands.iter().enumerate() {
        for omega_pi in [b.from_pi, b.to_pi] {
            points.push(GridPoint {
                omega_pi,
                lower: b.lower,
                upper: b.upper,
                band,
            });
        }
    }
}

/// Insert extra frequencies into an existing grid; each comes with the index
/// of the band it belongs to and inherits that band's bounds. Frequencies
/// outside their claimed band are ignored. Returns how many distinct points
/// were added.
pub fn add_points(spec: &FilterSpec, grid: &mut Vec<GridPoint>, points: &[(f64, usize)]) -> usize {
    let before = grid.len();
    for &(omega_pi, band) in points {
        let Some(b) = spec.bands.get(band) else {
            continue;
        };
        if omega_pi >= b.from_pi - 1e-12 && omega_pi <= b.to_pi + 1e-12 {
            grid.push(GridPoint {
                omega_pi: omega_pi.clamp(b.from_pi, b.to_pi),
                lower: b.lower,
                upper: b.upper,
                band,
            });
        }
    }
    sort_merge(grid);
    grid.len().saturating_sub(before)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spec::{Band, FilterSpec, FilterType, GainMode};

    fn lowpass(filter_type: FilterType, order: u32) -> FilterSpec {
        FilterSpec::new(
            vec![
                Band {
                    from_pi: 0.0,
                    to_pi: 0.3,
                    lower: 0.9843,
                    upper: 1.0157,
                },
                Band {
                    from_pi: 0.5,
                    to_pi: 1.0,
                    lower: -0.0066,
                    upper: 0.0066,
                },
            ],
            order,
            filter_type,
            8,
            GainMode::default_variable(),
        )
        .unwrap()
    }

    #[test]
    fn uniform_splits_by_width() {
        let spec = lowpass(FilterType::I, 24);
        let grid = uniform_grid(&spec, 104);
        let pass = grid.iter().filter(|p| p.band == 0).count();
        let stop = grid.iter().filter(|p| p.band == 1).count();
        assert_eq!(pass + stop, grid.len());
        assert_eq!(pass, 39);
        assert_eq!(stop, 65);
        assert!(grid.windows(2).all(|w| w[0].omega_pi < w[1].omega_pi));
        assert_eq!(grid.first().unwrap().omega_pi, 0.0);
        assert_eq!(grid.last().unwrap().omega_pi, 1.0);
    }

    #[test]
    fn uniform_keeps_band_edges() {
        let spec = lowpass(FilterType::I, 24);
        for size in [10, 50, 333] {
            let grid = uniform_grid(&spec, size);
            for edge in [0.0, 0.3, 0.5, 1.0] {
                assert!(grid.iter().any(|p| p.omega_pi == edge), "size {size}");
            }
        }
    }

    #[test]
    fn touching_bands_intersect_bounds() {
        let spec = FilterSpec::new(
            vec![
                Band {
                    from_pi: 0.0,
                    to_pi: 0.15,
                    lower: 0.9772,
                    upper: 1.0232,
                },
                Band {
                    from_pi: 0.15,
                    to_pi: 0.1875,
                    lower: 0.9441,
                    upper: 1.0232,
                },
            ],
            34,
            FilterType::I,
            8,
            GainMode::default_variable(),
        )
        .unwrap();
        let grid = uniform_grid(&spec, 40);
        let at_edge: Vec<_> = grid.iter().filter(|p| p.omega_pi == 0.15).collect();
        assert_eq!(at_edge.len(), 1);
        assert_eq!(at_edge[0].lower, 0.9772);
        assert_eq!(at_edge[0].upper, 1.0232);
    }

    #[test]
    fn afp_selects_target_points() {
        let spec = lowpass(FilterType::I, 24);
        let target = 4 * spec.coefficient_count();
        let afp = afp_grid(&spec, target, 16, true);
        assert!(!afp.fell_back);
        assert!(afp.points.len() >= target);
        assert!(afp.points.len() <= target + 2 * spec.bands.len());
        for edge in [0.0, 0.3, 0.5, 1.0] {
            assert!(afp.points.iter().any(|p| p.omega_pi == edge));
        }
        let again = afp_grid(&spec, target, 16, true);
        assert_eq!(afp.points, again.points);
    }

    #[test]
    fn afp_without_forced_edges_is_pure_selection() {
        let spec = lowpass(FilterType::I, 24);
        let target = 4 * spec.coefficient_count();
        let afp = afp_grid(&spec, target, 16, false);
        assert_eq!(afp.points.len(), target);
        let candidates = uniform_grid(&spec, target * 16);
        for p in &afp.points {
            assert!(candidates.iter().any(|c| c.omega_pi == p.omega_pi));
        }
    }

    #[test]
    fn afp_falls_back_on_rank_deficient_basis() {
        // The type III basis contains an identically-zero function and a
        // dependent pair, so full-rank selection is impossible.
        let spec = lowpass(FilterType::III, 24);
        let afp = afp_grid(&spec, 4 * spec.coefficient_count(), 16, true);
        assert!(afp.fell_back);
        assert!(!afp.points.is_empty());
    }

    #[test]
    fn add_points_attaches_band_bounds() {
        let spec = lowpass(FilterType::I, 24);
        let mut grid = uniform_grid(&spec, 20);
        let added = add_points(&spec, &mut grid, &[(0.123, 0), (0.4, 0), (0.77, 1)]);
        assert_eq!(added, 2);
        let p = grid
            .iter()
            .find(|p| (p.omega_pi - 0.123).abs() < 1e-15)
            .unwrap();
        assert_eq!(p.upper, 1.0157);
        let q = grid
            .iter()
            .find(|p| (p.omega_pi - 0.77).abs() < 1e-15)
            .unwrap();
        assert_eq!(q.upper, 0.0066);
        assert!(!grid.iter().any(|p| (p.omega_pi - 0.4).abs() < 1e-15));
    }

    #[test]
    fn add_duplicate_changes_nothing() {
        let spec = lowpass(FilterType::I, 24);
        let mut grid = uniform_grid(&spec, 20);
        let n = grid.len();
        let existing = grid[3];
        let added = add_points(&spec, &mut grid, &[(existing.omega_pi, existing.band)]);
        assert_eq!(added, 0);
        assert_eq!(grid.len(), n);
    }
}
