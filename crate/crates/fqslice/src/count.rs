//! Exact point counting: exhaustive counts of a hypersurface, slice counts
//! over planes, and exact mean/variance of slice counts across all planes.
//!
//! The exhaustive counter iterates over the first n-1 coordinates,
//! specializes the defining polynomial to a univariate in the last
//! coordinate, and counts its roots by direct evaluation. Work is split
//! into deterministic chunks and combined by integer sums, so results are
//! identical for any thread count.

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::plane::{enumerate_planes_capped, plane_census, AffinePlane, DEFAULT_PLANE_CAP};
use crate::poly::MultiPoly;
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use std::collections::{BTreeMap, HashSet};
use std::time::{Duration, Instant};

/// Default cap on the ambient point-space size q^n.
pub const DEFAULT_SPACE_CAP: u128 = 1 << 31;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CountMethod {
    Exhaustive,
    SliceSum,
}

#[derive(Debug, Clone)]
pub struct CountResult {
    pub count: u64,
    pub method: CountMethod,
    pub elapsed: Duration,
    pub points_scanned: u64,
}

/// Exact |{x : P(x) = 0}| over F_q^n.
pub fn count_points(poly: &MultiPoly) -> Result<CountResult> {
    count_points_capped(poly, DEFAULT_SPACE_CAP)
}

pub fn count_points_capped(poly: &MultiPoly, cap: u128) -> Result<CountResult> {
    let field = poly.field().clone();
    let n = poly.nvars();
    let q = field.q();
    let space = (q as u128).pow(n as u32);
    if space > cap {
        return Err(Error::SpaceTooLarge(space, cap));
    }
    let start = Instant::now();

    if n == 0 {
        let c = if poly.is_zero() { 1 } else { 0 };
        return Ok(CountResult {
            count: c,
            method: CountMethod::Exhaustive,
            elapsed: start.elapsed(),
            points_scanned: 1,
        });
    }
    if poly.is_zero() {
        return Ok(CountResult {
            count: space as u64,
            method: CountMethod::Exhaustive,
            elapsed: start.elapsed(),
            points_scanned: 0,
        });
    }

    let prefix_count = (q as u128).pow(n as u32 - 1) as u64;
    let last = n - 1;
    let deg_last = poly.degree_in(last).unwrap_or(0) as usize;
    // Terms pre-split into (last-var exponent, prefix exponents, coefficient).
    let split_terms: Vec<(usize, Vec<u16>, FieldElement)> = poly
        .terms()
        .map(|(e, c)| (e[last] as usize, e[..last].to_vec(), c))
        .collect();
    let elements: Vec<FieldElement> = field.elements().collect();

    let chunk = 1u64 << 12;
    let chunks: Vec<u64> = (0..prefix_count.div_ceil(chunk)).collect();
    let count: u64 = chunks
        .par_iter()
        .map(|&ci| {
            let lo = ci * chunk;
            let hi = (lo + chunk).min(prefix_count);
            let mut local = 0u64;
            let mut prefix = vec![FieldElement::ZERO; last];
            let mut coeffs = vec![FieldElement::ZERO; deg_last + 1];
            for idx in lo..hi {
                let mut m = idx;
                for slot in prefix.iter_mut() {
                    *slot = field.element(m % q);
                    m /= q;
                }
                for c in coeffs.iter_mut() {
                    *c = FieldElement::ZERO;
                }
                for (le, pe, c) in &split_terms {
                    let mut t = *c;
                    for (i, &e) in pe.iter().enumerate() {
                        if e > 0 {
                            t = field.mul(t, field.pow(prefix[i], e as u64));
                        }
                    }
                    coeffs[*le] = field.add(coeffs[*le], t);
                }
                if coeffs.iter().all(|c| c.is_zero()) {
                    local += q;
                    continue;
                }
                for &x in &elements {
                    // Horner evaluation in the last variable.
                    let mut acc = FieldElement::ZERO;
                    for &c in coeffs.iter().rev() {
                        acc = field.add(field.mul(acc, x), c);
                    }
                    if acc.is_zero() {
                        local += 1;
                    }
                }
            }
            local
        })
        .sum();

    let result = CountResult {
        count,
        method: CountMethod::Exhaustive,
        elapsed: start.elapsed(),
        points_scanned: space as u64,
    };
    // Schwartz-Zippel style sanity cap for nonzero polynomials of degree >= 1.
    if let Some(d) = poly.total_degree() {
        if d >= 1 {
            debug_assert!(result.count as u128 <= d as u128 * (q as u128).pow(n as u32 - 1));
        }
    }
    Ok(result)
}

/// Exact |{(s,t) : G(s,t) = 0}| for G the restriction of `poly` to the
/// plane; a plane contained in the hypersurface yields q^2.
pub fn count_slice(poly: &MultiPoly, plane: &AffinePlane) -> Result<u64> {
    let restricted = poly.restrict_to_plane(plane)?;
    Ok(count_bivariate_zeros(&restricted))
}

/// Zeros of a bivariate polynomial over F_q^2, q^2 for the zero polynomial.
pub fn count_bivariate_zeros(g: &MultiPoly) -> u64 {
    let field = g.field().clone();
    let q = field.q();
    assert_eq!(g.nvars(), 2, "expects a bivariate polynomial");
    if g.is_zero() {
        return q * q;
    }
    let ds = g.degree_in(0).unwrap_or(0) as usize;
    let dt = g.degree_in(1).unwrap_or(0) as usize;
    // Dense grid: grid[i][j] multiplies s^i t^j.
    let mut grid = vec![vec![FieldElement::ZERO; dt + 1]; ds + 1];
    for (e, c) in g.terms() {
        grid[e[0] as usize][e[1] as usize] = c;
    }
    let elements: Vec<FieldElement> = field.elements().collect();
    let mut count = 0u64;
    let mut tcoef = vec![FieldElement::ZERO; dt + 1];
    for &s in &elements {
        // Collapse the s-dimension by Horner, leaving a univariate in t.
        for (j, c) in tcoef.iter_mut().enumerate() {
            let mut acc = FieldElement::ZERO;
            for row in grid.iter().rev() {
                acc = field.add(field.mul(acc, s), row[j]);
            }
            *c = acc;
        }
        if tcoef.iter().all(|c| c.is_zero()) {
            count += q;
            continue;
        }
        for &t in &elements {
            let mut acc = FieldElement::ZERO;
            for &c in tcoef.iter().rev() {
                acc = field.add(field.mul(acc, t), c);
            }
            if acc.is_zero() {
                count += 1;
            }
        }
    }
    count
}

/// Exact mean/variance of slice counts over all planes.
#[derive(Debug, Clone)]
pub struct PlaneStats {
    pub mean: BigRational,
    pub variance: BigRational,
    pub histogram: BTreeMap<u64, u64>,
    pub total_planes: u64,
}

/// What gets sliced: a hypersurface or an arbitrary finite point set.
pub enum SliceSubject<'a> {
    Poly(&'a MultiPoly),
    Points {
        field: &'a std::sync::Arc<FieldSpec>,
        n: usize,
        points: &'a HashSet<Vec<u32>>,
    },
}

pub fn exact_plane_statistics(subject: SliceSubject<'_>) -> Result<PlaneStats> {
    exact_plane_statistics_capped(subject, DEFAULT_PLANE_CAP)
}

pub fn exact_plane_statistics_capped(
    subject: SliceSubject<'_>,
    cap: u128,
) -> Result<PlaneStats> {
    let (field, n) = match &subject {
        SliceSubject::Poly(p) => (p.field().clone(), p.nvars()),
        SliceSubject::Points { field, n, .. } => ((*field).clone(), *n),
    };
    let planes: Vec<AffinePlane> = enumerate_planes_capped(&field, n, cap)?.collect();
    let counts: Vec<u64> = match &subject {
        SliceSubject::Poly(p) => planes
            .par_iter()
            .map(|h| count_slice(p, h))
            .collect::<Result<Vec<_>>>()?,
        SliceSubject::Points { points, .. } => planes
            .par_iter()
            .map(|h| {
                h.points()
                    .filter(|pt| {
                        let key: Vec<u32> = pt.iter().map(|e| e.index()).collect();
                        points.contains(&key)
                    })
                    .count() as u64
            })
            .collect(),
    };
    let total = counts.len() as u64;
    let mut histogram: BTreeMap<u64, u64> = BTreeMap::new();
    let mut s1 = BigUint::zero();
    let mut s2 = BigUint::zero();
    for &c in &counts {
        *histogram.entry(c).or_default() += 1;
        s1 += BigUint::from(c);
        s2 += BigUint::from(c) * BigUint::from(c);
    }
    let total_big = BigUint::from(total);
    let mean = BigRational::new(s1.into(), total_big.clone().into());
    let ex2 = BigRational::new(s2.into(), total_big.into());
    let variance = ex2 - &mean * &mean;
    Ok(PlaneStats {
        mean,
        variance,
        histogram,
        total_planes: total,
    })
}

/// Sum of slice counts over all planes equals N times the number of planes
/// through a point; dividing back out recovers N exactly.
pub fn count_by_slice_sum(poly: &MultiPoly) -> Result<CountResult> {
    let start = Instant::now();
    let field = poly.field().clone();
    let n = poly.nvars();
    let census = plane_census(&field, n)?;
    let planes: Vec<AffinePlane> = enumerate_planes_capped(&field, n, DEFAULT_PLANE_CAP)?.collect();
    let sum: u64 = planes
        .par_iter()
        .map(|h| count_slice(poly, h))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .sum();
    let through_point = census.total.to_u64().unwrap() / field.q().pow(n as u32 - 2);
    debug_assert_eq!(sum % through_point, 0);
    Ok(CountResult {
        count: sum / through_point,
        method: CountMethod::SliceSum,
        elapsed: start.elapsed(),
        points_scanned: planes.len() as u64 * field.q() * field.q(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::plane::enumerate_planes;
    use crate::poly::parse_poly;
    use num_traits::One;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};
    use std::sync::Arc;

    fn f(p: u64) -> Arc<FieldSpec> {
        FieldSpec::new(p, 1).unwrap()
    }

    /// Independent oracle: count by evaluating at every point of F_q^n.
    fn brute_count(poly: &MultiPoly) -> u64 {
        let field = poly.field().clone();
        let q = field.q();
        let n = poly.nvars();
        let space = q.pow(n as u32);
        let mut count = 0;
        for idx in 0..space {
            let mut m = idx;
            let pt: Vec<FieldElement> = (0..n)
                .map(|_| {
                    let e = field.element(m % q);
                    m /= q;
                    e
                })
                .collect();
            if poly.eval(&pt).unwrap().is_zero() {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn hyperplane_and_graph_counts() {
        let f5 = f(5);
        let p = parse_poly("x0", 3, f5).unwrap();
        assert_eq!(count_points(&p).unwrap().count, 25);

        let f3 = f(3);
        let graph = parse_poly("x2 - x0*x1", 3, f3).unwrap();
        assert_eq!(count_points(&graph).unwrap().count, 9);
    }

    #[test]
    fn elliptic_curve_count_matches_brute_force() {
        let f5 = f(5);
        let p = parse_poly("x1^2 - x0^3 + x0", 2, f5).unwrap();
        assert_eq!(brute_count(&p), 7);
        assert_eq!(count_points(&p).unwrap().count, 7);
    }

    #[test]
    fn zero_poly_counts_whole_space() {
        let f3 = f(3);
        let z = parse_poly("0", 3, f3).unwrap();
        assert_eq!(count_points(&z).unwrap().count, 27);
    }

    #[test]
    fn space_cap_enforced() {
        let f17 = f(17);
        let p = parse_poly("x0", 3, f17).unwrap();
        assert!(matches!(
            count_points_capped(&p, 100),
            Err(Error::SpaceTooLarge(4913, 100))
        ));
    }

    #[test]
    fn random_polys_match_brute_force() {
        let mut rng = StdRng::seed_from_u64(5);
        for p in [2u64, 3, 5] {
            let field = f(p);
            for _ in 0..8 {
                let terms: Vec<_> = (0..rng.gen_range(1..6))
                    .map(|_| {
                        let exps: Vec<u16> =
                            (0..3).map(|_| rng.gen_range(0..3u16)).collect();
                        (exps, field.element(rng.gen_range(0..p)))
                    })
                    .collect();
                let poly = MultiPoly::from_terms(field.clone(), 3, terms).unwrap();
                assert_eq!(count_points(&poly).unwrap().count, brute_count(&poly));
            }
        }
    }

    #[test]
    fn slice_counts() {
        let f7 = f(7);
        let e = |i: usize| {
            let mut v = vec![FieldElement::ZERO; 3];
            v[i] = FieldElement::ONE;
            v
        };
        let zero = vec![FieldElement::ZERO; 3];
        let p = parse_poly("x0", 3, f7.clone()).unwrap();
        // Plane inside the hyperplane: full q^2.
        let inside = AffinePlane::new(f7.clone(), zero.clone(), e(1), e(2)).unwrap();
        assert_eq!(count_slice(&p, &inside).unwrap(), 49);
        // Transverse plane: a line.
        let across = AffinePlane::new(f7.clone(), zero, e(0), e(1)).unwrap();
        assert_eq!(count_slice(&p, &across).unwrap(), 7);
    }

    #[test]
    fn slice_count_product_surface() {
        // x2 - x0*x1 restricted to the (x0, x1) coordinate plane through 0
        // gives G = -s*t, whose zero set {s*t = 0} has 3 + 3 - 1 = 5 points
        // over F_3 (computed by enumerating all 9 pairs).
        let f3 = f(3);
        let p = parse_poly("x2 - x0*x1", 3, f3.clone()).unwrap();
        let e = |i: usize| {
            let mut v = vec![FieldElement::ZERO; 3];
            v[i] = FieldElement::ONE;
            v
        };
        let h = AffinePlane::new(
            f3.clone(),
            vec![FieldElement::ZERO; 3],
            e(0),
            e(1),
        )
        .unwrap();
        let g = p.restrict_to_plane(&h).unwrap();
        let brute = {
            let mut c = 0;
            for s in f3.elements() {
                for t in f3.elements() {
                    if g.eval(&[s, t]).unwrap().is_zero() {
                        c += 1;
                    }
                }
            }
            c
        };
        assert_eq!(brute, 5);
        assert_eq!(count_slice(&p, &h).unwrap(), 5);
    }

    #[test]
    fn stats_empty_single_and_full() {
        let field = f(2);
        let empty = HashSet::new();
        let stats = exact_plane_statistics(SliceSubject::Points {
            field: &field,
            n: 3,
            points: &empty,
        })
        .unwrap();
        assert!(stats.mean.is_zero());
        assert!(stats.variance.is_zero());

        let mut single = HashSet::new();
        single.insert(vec![0u32, 0, 0]);
        let stats = exact_plane_statistics(SliceSubject::Points {
            field: &field,
            n: 3,
            points: &single,
        })
        .unwrap();
        assert_eq!(stats.mean, BigRational::new(1.into(), 2.into()));

        let all: HashSet<Vec<u32>> = (0..8u32)
            .map(|i| vec![i & 1, (i >> 1) & 1, (i >> 2) & 1])
            .collect();
        let stats = exact_plane_statistics(SliceSubject::Points {
            field: &field,
            n: 3,
            points: &all,
        })
        .unwrap();
        assert_eq!(stats.mean, BigRational::from_integer(4.into()));
        assert!(stats.variance.is_zero());
    }

    #[test]
    fn stats_random_subset_mean_and_variance_bound() {
        let field = f(3);
        let mut rng = StdRng::seed_from_u64(9);
        for _ in 0..5 {
            let mut points = HashSet::new();
            while points.len() < 5 {
                points.insert(vec![
                    rng.gen_range(0..3u32),
                    rng.gen_range(0..3u32),
                    rng.gen_range(0..3u32),
                ]);
            }
            let stats = exact_plane_statistics(SliceSubject::Points {
                field: &field,
                n: 3,
                points: &points,
            })
            .unwrap();
            let expected_mean = BigRational::new(5.into(), 3.into());
            assert_eq!(stats.mean, expected_mean);
            assert!(stats.variance <= expected_mean);
            assert!(stats.variance >= BigRational::zero());
            let total: u64 = stats.histogram.values().sum();
            assert_eq!(total, 39);
        }
    }

    #[test]
    fn stats_mean_matches_exact_count_for_polys() {
        let f3 = f(3);
        for text in ["x0", "x2 - x0*x1", "x0^2 + x1*x2 + 1"] {
            let p = parse_poly(text, 3, f3.clone()).unwrap();
            let n_exact = count_points(&p).unwrap().count;
            let stats = exact_plane_statistics(SliceSubject::Poly(&p)).unwrap();
            assert_eq!(
                stats.mean,
                BigRational::new(n_exact.into(), 3.into()),
                "poly {text}"
            );
            assert!(stats.variance <= stats.mean || n_exact == 0);
        }
    }

    #[test]
    fn slice_sum_identity() {
        for p in [2u64, 3] {
            let field = f(p);
            let poly = parse_poly("x0*x1 + x2", 3, field.clone()).unwrap();
            let n_exact = count_points(&poly).unwrap().count;
            let census = plane_census(&field, 3).unwrap();
            let sum: u64 = enumerate_planes(&field, 3)
                .unwrap()
                .map(|h| count_slice(&poly, &h).unwrap())
                .sum();
            let through_point =
                census.total.to_u64().unwrap() / field.q().pow(1);
            assert_eq!(sum, n_exact * through_point);
            let by_sum = count_by_slice_sum(&poly).unwrap();
            assert_eq!(by_sum.count, n_exact);
        }
        // Spot check the census formula route for q = 17.
        let field = f(17);
        let census = plane_census(&field, 3).unwrap();
        assert_eq!(census.total, BigUint::from(5219u32));
        assert_eq!(
            census.point_membership,
            BigRational::new(BigUint::one().into(), 17.into())
        );
    }

    #[test]
    fn parallel_and_serial_counts_agree() {
        let f17 = f(17);
        let p = parse_poly("x1^2 - x0^3 + x0*x2 + 2", 3, f17).unwrap();
        let a = count_points(&p).unwrap().count;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap();
        let b = pool.install(|| count_points(&p).unwrap().count);
        assert_eq!(a, b);
    }
}
