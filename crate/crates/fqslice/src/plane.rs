//! Two-dimensional affine planes in F_q^n: counting combinatorics, exact
//! enumeration, uniform sampling, and canonical point-set keys.
//!
//! A plane is stored as a base point plus two linearly independent
//! direction vectors. Two such triples describe the same point set exactly
//! when their canonical keys (reduced row echelon form of the directions,
//! base point with pivot coordinates zeroed) agree.

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::One;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

/// Default cap on how many planes [`enumerate_planes`] will stream.
pub const DEFAULT_PLANE_CAP: u128 = 10_000_000;

#[derive(Debug, Clone)]
pub struct AffinePlane {
    field: Arc<FieldSpec>,
    base: Vec<FieldElement>,
    u: Vec<FieldElement>,
    v: Vec<FieldElement>,
}

impl AffinePlane {
    pub fn new(
        field: Arc<FieldSpec>,
        base: Vec<FieldElement>,
        u: Vec<FieldElement>,
        v: Vec<FieldElement>,
    ) -> Result<Self> {
        let n = base.len();
        if u.len() != n || v.len() != n {
            return Err(Error::DimensionMismatch(
                "base and direction vectors have different lengths".into(),
            ));
        }
        if !independent(&field, &u, &v) {
            return Err(Error::InvalidInput(
                "direction vectors are linearly dependent".into(),
            ));
        }
        Ok(AffinePlane { field, base, u, v })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.base.len()
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn base(&self) -> &[FieldElement] {
        &self.base
    }

    pub fn u(&self) -> &[FieldElement] {
        &self.u
    }

    pub fn v(&self) -> &[FieldElement] {
        &self.v
    }

    /// The point base + s*u + t*v.
    pub fn point_at(&self, s: FieldElement, t: FieldElement) -> Vec<FieldElement> {
        let f = &self.field;
        (0..self.dim())
            .map(|i| {
                f.add(
                    self.base[i],
                    f.add(f.mul(s, self.u[i]), f.mul(t, self.v[i])),
                )
            })
            .collect()
    }

    /// All q^2 points of the plane.
    pub fn points(&self) -> impl Iterator<Item = Vec<FieldElement>> + '_ {
        let f = self.field.clone();
        f.clone()
            .elements()
            .collect::<Vec<_>>()
            .into_iter()
            .flat_map(move |s| {
                let me = self;
                f.elements()
                    .collect::<Vec<_>>()
                    .into_iter()
                    .map(move |t| me.point_at(s, t))
            })
    }

    /// Canonical key identifying the plane as a point set.
    pub fn canonical_key(&self) -> PlaneKey {
        let f = &self.field;
        let (rows, pivots) = rref2(f, &self.u, &self.v);
        let mut base: Vec<FieldElement> = self.base.clone();
        // Zero out the pivot coordinates of the base point.
        for (row, &piv) in rows.iter().zip(&pivots) {
            let c = base[piv];
            if !c.is_zero() {
                for (bi, &ri) in base.iter_mut().zip(row) {
                    *bi = f.sub(*bi, f.mul(c, ri));
                }
            }
        }
        PlaneKey {
            rows: rows
                .into_iter()
                .map(|r| r.into_iter().map(FieldElement::index).collect())
                .collect(),
            base: base.into_iter().map(FieldElement::index).collect(),
        }
    }
}

/// Canonical identifier of a plane's point set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlaneKey {
    rows: Vec<Vec<u32>>,
    base: Vec<u32>,
}

fn independent(f: &FieldSpec, u: &[FieldElement], v: &[FieldElement]) -> bool {
    let pivot = match u.iter().position(|c| !c.is_zero()) {
        Some(i) => i,
        None => return false,
    };
    // Eliminate v's pivot coordinate and check something survives.
    let scale = f
        .mul(v[pivot], f.inv(u[pivot]).expect("pivot is nonzero"));
    u.iter()
        .zip(v)
        .any(|(&ui, &vi)| !f.sub(vi, f.mul(scale, ui)).is_zero())
}

/// Reduced row echelon form of the 2-by-n matrix with rows u, v.
/// Returns the two rows and their pivot columns (p1 < p2).
fn rref2(
    f: &FieldSpec,
    u: &[FieldElement],
    v: &[FieldElement],
) -> (Vec<Vec<FieldElement>>, Vec<usize>) {
    let n = u.len();
    let mut r1: Vec<FieldElement> = u.to_vec();
    let mut r2: Vec<FieldElement> = v.to_vec();
    let p1 = r1
        .iter()
        .position(|c| !c.is_zero())
        .expect("independent rows");
    let inv1 = f.inv(r1[p1]).unwrap();
    for c in r1.iter_mut() {
        *c = f.mul(*c, inv1);
    }
    let s = r2[p1];
    if !s.is_zero() {
        for i in 0..n {
            r2[i] = f.sub(r2[i], f.mul(s, r1[i]));
        }
    }
    let p2 = r2
        .iter()
        .position(|c| !c.is_zero())
        .expect("independent rows");
    let inv2 = f.inv(r2[p2]).unwrap();
    for c in r2.iter_mut() {
        *c = f.mul(*c, inv2);
    }
    let s = r1[p2];
    if !s.is_zero() {
        for i in 0..n {
            r1[i] = f.sub(r1[i], f.mul(s, r2[i]));
        }
    }
    if p1 < p2 {
        (vec![r1, r2], vec![p1, p2])
    } else {
        (vec![r2, r1], vec![p2, p1])
    }
}

/// Exact counting combinatorics of planes in F_q^n.
#[derive(Debug, Clone, PartialEq)]
pub struct PlaneCensus {
    /// Number of affine planes.
    pub total: BigUint,
    /// Number of planes through the origin (2-dimensional subspaces).
    pub through_origin: BigUint,
    /// Fraction of all planes containing a fixed point: 1/q^(n-2).
    pub point_membership: BigRational,
    /// Fraction of all planes containing two fixed distinct points:
    /// (q^2-1)/(q^(2n-2) - q^(n-2)).
    pub pair_membership: BigRational,
}

pub fn plane_census(field: &FieldSpec, n: usize) -> Result<PlaneCensus> {
    if n < 3 {
        return Err(Error::DimensionTooSmall(n, 3));
    }
    let q = BigUint::from(field.q());
    let one = BigUint::one();
    let qn = q.pow(n as u32);
    let q2 = q.pow(2);
    let through_origin = (&qn - &one) * (&qn - &q) / ((&q2 - &one) * (&q2 - &q));
    let total = &through_origin * q.pow(n as u32 - 2);
    let point_membership = BigRational::new(
        1.into(),
        q.pow(n as u32 - 2).into(),
    );
    let pair_membership = BigRational::new(
        (&q2 - &one).into(),
        (q.pow(2 * n as u32 - 2) - q.pow(n as u32 - 2)).into(),
    );
    Ok(PlaneCensus {
        total,
        through_origin,
        point_membership,
        pair_membership,
    })
}

/// Direction subspaces in reduced row echelon form, streamed in a fixed
/// deterministic order. Each item is (rows, pivots).
pub fn enumerate_direction_subspaces(
    field: &Arc<FieldSpec>,
    n: usize,
) -> impl Iterator<Item = (Vec<Vec<FieldElement>>, Vec<usize>)> {
    let field = field.clone();
    let q = field.q();
    let pivot_pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| ((a + 1)..n).map(move |b| (a, b)))
        .collect();
    pivot_pairs.into_iter().flat_map(move |(p1, p2)| {
        let field = field.clone();
        // Free positions: row 1 may be nonzero after p1 except at p2;
        // row 2 may be nonzero after p2.
        let free1: Vec<usize> = ((p1 + 1)..n).filter(|&j| j != p2).collect();
        let free2: Vec<usize> = ((p2 + 1)..n).collect();
        let total_free = free1.len() + free2.len();
        let count = q.pow(total_free as u32);
        (0..count).map(move |mut m| {
            let mut r1 = vec![FieldElement::ZERO; n];
            let mut r2 = vec![FieldElement::ZERO; n];
            r1[p1] = FieldElement::ONE;
            r2[p2] = FieldElement::ONE;
            for &j in &free1 {
                r1[j] = field.element(m % q);
                m /= q;
            }
            for &j in &free2 {
                r2[j] = field.element(m % q);
                m /= q;
            }
            (vec![r1, r2], vec![p1, p2])
        })
    })
}

/// Stream every affine plane of F_q^n exactly once.
pub fn enumerate_planes(
    field: &Arc<FieldSpec>,
    n: usize,
) -> Result<impl Iterator<Item = AffinePlane>> {
    enumerate_planes_capped(field, n, DEFAULT_PLANE_CAP)
}

pub fn enumerate_planes_capped(
    field: &Arc<FieldSpec>,
    n: usize,
    cap: u128,
) -> Result<impl Iterator<Item = AffinePlane>> {
    let census = plane_census(field, n)?;
    let total: u128 = (&census.total)
        .try_into()
        .map_err(|_| Error::TooManyPlanes(u128::MAX, cap))?;
    if total > cap {
        return Err(Error::TooManyPlanes(total, cap));
    }
    let q = field.q();
    let field = field.clone();
    let reps = q.pow(n as u32 - 2);
    Ok(
        enumerate_direction_subspaces(&field.clone(), n).flat_map(move |(rows, pivots)| {
            let field = field.clone();
            let free: Vec<usize> = (0..n).filter(|j| !pivots.contains(j)).collect();
            (0..reps).map(move |mut m| {
                let mut base = vec![FieldElement::ZERO; n];
                for &j in &free {
                    base[j] = field.element(m % q);
                    m /= q;
                }
                AffinePlane {
                    field: field.clone(),
                    base,
                    u: rows[0].clone(),
                    v: rows[1].clone(),
                }
            })
        }),
    )
}

/// Uniform random plane: uniform base point, then rejection sampling of
/// ordered direction pairs until independent. Every plane arises from
/// exactly q^2 (q^2-1)(q^2-q) of the accepted (base, u, v) triples, so the
/// distribution over planes is uniform.
pub fn sample_plane(
    field: &Arc<FieldSpec>,
    n: usize,
    rng: &mut impl Rng,
) -> Result<AffinePlane> {
    if n < 3 {
        return Err(Error::DimensionTooSmall(n, 3));
    }
    let q = field.q();
    let rand_vec = |rng: &mut dyn rand::RngCore| -> Vec<FieldElement> {
        (0..n).map(|_| field.element(rng.gen_range(0..q))).collect()
    };
    let base = rand_vec(rng);
    loop {
        let u = rand_vec(rng);
        let v = rand_vec(rng);
        if independent(field, &u, &v) {
            return Ok(AffinePlane {
                field: field.clone(),
                base,
                u,
                v,
            });
        }
    }
}

/// Deterministic per-index RNG stream: sample i of a run with a given seed
/// always sees the same generator state, independent of threading.
pub fn stream_rng(seed: u64, index: u64) -> ChaCha8Rng {
    // splitmix64 expansion of (seed, index) into a 256-bit ChaCha key.
    let mut state = seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    let mut next = || {
        state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    };
    let mut key = [0u8; 32];
    for chunk in key.chunks_mut(8) {
        chunk.copy_from_slice(&next().to_le_bytes());
    }
    ChaCha8Rng::from_seed(key)
}

/// The plane drawn by sample index `i` under a fixed 64-bit seed.
pub fn sample_plane_indexed(
    field: &Arc<FieldSpec>,
    n: usize,
    seed: u64,
    index: u64,
) -> Result<AffinePlane> {
    let mut rng = stream_rng(seed, index);
    sample_plane(field, n, &mut rng)
}
