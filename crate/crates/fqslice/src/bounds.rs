//! Explicit numeric intervals, thresholds, conditions and regime
//! classification for the point count N of an absolutely irreducible
//! degree-d hypersurface in affine n-space over F_q.
//!
//! Containing intervals are rounded outward and forbidden intervals
//! inward, so neither kind of claim is ever overstated. Every comparison
//! that decides a threshold (regime boundaries, the sqrt-q conditions) is
//! made in exact integer arithmetic; enclosures only decorate reported
//! endpoint values.

use crate::error::{Error, Result};
use crate::exact::{
    big, big_u, cmp_mul_sqrt, cmp_q_vs_c_d_13_3, q_pow, rational_string, Enclosure,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

/// Parameters of the forbidden-interval statements.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundParams {
    pub alpha: BigRational,
    pub e: BigRational,
    pub gamma: BigRational,
    pub a: BigRational,
    pub b: BigRational,
}

impl BoundParams {
    /// The worked parameter choice: alpha = gamma = 2/3, e = 9, A = B = 3.
    pub fn default_paper() -> Self {
        BoundParams {
            alpha: BigRational::new(2.into(), 3.into()),
            e: big(9),
            gamma: BigRational::new(2.into(), 3.into()),
            a: big(3),
            b: big(3),
        }
    }

    pub fn validate_lower(&self) -> Result<()> {
        if !(self.alpha.is_positive() && self.alpha < BigRational::one()) {
            return Err(Error::ParameterConstraintViolated(
                "alpha must lie in (0,1)".into(),
            ));
        }
        if !self.e.is_positive() {
            return Err(Error::ParameterConstraintViolated("e must be > 0".into()));
        }
        if &self.e * &self.alpha * &self.alpha <= BigRational::one() {
            return Err(Error::ParameterConstraintViolated(
                "e*alpha^2 must exceed 1".into(),
            ));
        }
        Ok(())
    }

    pub fn validate_upper(&self) -> Result<()> {
        for (name, v) in [("alpha", &self.alpha), ("gamma", &self.gamma)] {
            if !(v.is_positive() && *v < BigRational::one()) {
                return Err(Error::ParameterConstraintViolated(format!(
                    "{name} must lie in (0,1)"
                )));
            }
        }
        for (name, v) in [("A", &self.a), ("B", &self.b)] {
            if !v.is_positive() {
                return Err(Error::ParameterConstraintViolated(format!(
                    "{name} must be > 0"
                )));
            }
        }
        Ok(())
    }
}

/// One directed-rounded interval endpoint.
#[derive(Debug, Clone, PartialEq)]
pub struct Endpoint {
    /// Rounded value; the true endpoint lies on the sound side of it.
    pub value: BigRational,
    /// True when `value` equals the endpoint exactly.
    pub exact: bool,
    /// Exact form, e.g. "13 - 2*sqrt(17)".
    pub symbolic: String,
}

impl Endpoint {
    pub fn exact_rational(v: BigRational) -> Self {
        let symbolic = rational_string(&v);
        Endpoint {
            value: v,
            exact: true,
            symbolic,
        }
    }

    fn from_enclosure(enc: &Enclosure, round_up: bool, symbolic: String) -> Self {
        Endpoint {
            value: if round_up {
                enc.hi.clone()
            } else {
                enc.lo.clone()
            },
            exact: enc.is_point(),
            symbolic,
        }
    }
}

/// A numeric interval with endpoint openness and provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct Interval {
    pub lo: Endpoint,
    pub hi: Endpoint,
    pub lo_open: bool,
    pub hi_open: bool,
    pub empty: bool,
    pub provenance: String,
}

impl Interval {
    /// Whether an exact integer count lies inside the interval.
    pub fn contains_int(&self, v: u64) -> bool {
        if self.empty {
            return false;
        }
        let v = big_u(v);
        let above_lo = if self.lo_open {
            v > self.lo.value
        } else {
            v >= self.lo.value
        };
        let below_hi = if self.hi_open {
            v < self.hi.value
        } else {
            v <= self.hi.value
        };
        above_lo && below_hi
    }
}

/// Symbolic rendering of r0 + r1*sqrt(q) (+ r2*d^(13/3)).
fn symbolic_combo(
    rational: &BigRational,
    sqrt_coeff: &BigRational,
    q: u64,
    frac_coeff: &BigRational,
    d: u32,
) -> String {
    let mut parts: Vec<String> = Vec::new();
    if !rational.is_zero() || (sqrt_coeff.is_zero() && frac_coeff.is_zero()) {
        parts.push(rational_string(rational));
    }
    if !sqrt_coeff.is_zero() {
        parts.push(format!("{}*sqrt({q})", rational_string(sqrt_coeff)));
    }
    if !frac_coeff.is_zero() {
        parts.push(format!("{}*{d}^(13/3)", rational_string(frac_coeff)));
    }
    let mut out = String::new();
    for (i, p) in parts.iter().enumerate() {
        if i == 0 {
            out.push_str(p);
        } else if let Some(stripped) = p.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(stripped);
        } else {
            out.push_str(" + ");
            out.push_str(p);
        }
    }
    out
}

/// Value r0 + r1*sqrt(q) + r2*d^(13/3) with its enclosure and symbolic form.
struct Combo {
    rational: BigRational,
    sqrt_coeff: BigRational,
    q: u64,
    frac_coeff: BigRational,
    d: u32,
}

impl Combo {
    fn new(q: u64, d: u32) -> Self {
        Combo {
            rational: BigRational::zero(),
            sqrt_coeff: BigRational::zero(),
            q,
            frac_coeff: BigRational::zero(),
            d,
        }
    }

    fn rational(mut self, v: BigRational) -> Self {
        self.rational = v;
        self
    }

    fn sqrt_q(mut self, coeff: BigRational) -> Self {
        self.sqrt_coeff = coeff;
        self
    }

    fn d_13_3(mut self, coeff: BigRational) -> Self {
        self.frac_coeff = coeff;
        self
    }

    fn enclosure(&self) -> Enclosure {
        let mut enc = Enclosure::point(self.rational.clone());
        if !self.sqrt_coeff.is_zero() {
            enc = enc.add(&Enclosure::sqrt(&big_u(self.q)).scale(&self.sqrt_coeff));
        }
        if !self.frac_coeff.is_zero() {
            enc = enc.add(&Enclosure::d_13_3(self.d).scale(&self.frac_coeff));
        }
        enc
    }

    fn endpoint(&self, round_up: bool) -> Endpoint {
        let enc = self.enclosure();
        let symbolic = symbolic_combo(
            &self.rational,
            &self.sqrt_coeff,
            self.q,
            &self.frac_coeff,
            self.d,
        );
        Endpoint::from_enclosure(&enc, round_up, symbolic)
    }
}

fn coeff_d1d2(d: u32) -> BigRational {
    big((d as i64 - 1) * (d as i64 - 2))
}

fn coeff_d2d3(d: u32) -> BigRational {
    big((d as i64 - 2) * (d as i64 - 3))
}

/// |N - q| <= (d-1)(d-2)sqrt(q) + d + 1 for an absolutely irreducible
/// plane curve, as an outward-rounded interval around q.
pub fn weil_interval(d: u32, q: u64) -> Result<Interval> {
    if d < 1 {
        return Err(Error::InvalidDegree(d as i64));
    }
    let c = coeff_d1d2(d);
    let lo = Combo::new(q, d)
        .rational(big_u(q) - big(d as i64 + 1))
        .sqrt_q(-c.clone());
    let hi = Combo::new(q, d)
        .rational(big_u(q) + big(d as i64 + 1))
        .sqrt_q(c);
    Ok(Interval {
        lo: lo.endpoint(false),
        hi: hi.endpoint(true),
        lo_open: false,
        hi_open: false,
        empty: false,
        provenance: "weil_curve_bound".into(),
    })
}

/// |N - q^(n-1)| <= (d-1)(d-2)q^(n-3/2) + 12(d+3)^(n+1) q^(n-2),
/// outward-rounded, lower endpoint clamped at 0.
pub fn gl_interval(d: u32, q: u64, n: u32) -> Result<Interval> {
    if n < 2 {
        return Err(Error::DimensionTooSmall(n as usize, 2));
    }
    if d < 1 {
        return Err(Error::InvalidDegree(d as i64));
    }
    let center = q_pow(q, n - 1);
    let qn2 = q_pow(q, n - 2);
    let sqrt_coeff = coeff_d1d2(d) * &qn2;
    let const_term = big(12) * big(d as i64 + 3).pow(n as i32 + 1) * &qn2;
    let lo = Combo::new(q, d)
        .rational(&center - &const_term)
        .sqrt_q(-sqrt_coeff.clone());
    let hi = Combo::new(q, d)
        .rational(&center + &const_term)
        .sqrt_q(sqrt_coeff);
    let mut lo_pt = lo.endpoint(false);
    if lo_pt.value.is_negative() {
        lo_pt = Endpoint {
            value: BigRational::zero(),
            exact: true,
            symbolic: format!("max(0, {})", lo_pt.symbolic),
        };
    }
    Ok(Interval {
        lo: lo_pt,
        hi: hi.endpoint(true),
        lo_open: false,
        hi_open: false,
        empty: false,
        provenance: "ghorpade_lachaud".into(),
    })
}

/// The two general-dimension containing intervals: always
/// |N - q^(n-1)| <= (d-1)(d-2)q^(n-3/2) + 5 d^(13/3) q^(n-2), and when
/// q > 15 d^(13/3) additionally
/// |N - q^(n-1)| <= (d-1)(d-2)q^(n-3/2) + (5d^2+d+1) q^(n-2).
pub fn cm_interval(d: u32, q: u64, n: u32) -> Result<(Interval, Option<Interval>)> {
    if n < 2 {
        return Err(Error::DimensionTooSmall(n as usize, 2));
    }
    if d < 1 {
        return Err(Error::InvalidDegree(d as i64));
    }
    let center = q_pow(q, n - 1);
    let qn2 = q_pow(q, n - 2);
    let sqrt_coeff = coeff_d1d2(d) * &qn2;
    let frac_coeff = big(5) * &qn2;

    let lo = Combo::new(q, d)
        .rational(center.clone())
        .sqrt_q(-sqrt_coeff.clone())
        .d_13_3(-frac_coeff.clone());
    let hi = Combo::new(q, d)
        .rational(center.clone())
        .sqrt_q(sqrt_coeff.clone())
        .d_13_3(frac_coeff);
    let general = Interval {
        lo: lo.endpoint(false),
        hi: hi.endpoint(true),
        lo_open: false,
        hi_open: false,
        empty: false,
        provenance: "cafure_matera".into(),
    };

    let regular = if cmp_q_vs_c_d_13_3(q, 15, d) == Ordering::Greater {
        let const_term = big(5 * d as i64 * d as i64 + d as i64 + 1) * &qn2;
        let lo = Combo::new(q, d)
            .rational(&center - &const_term)
            .sqrt_q(-sqrt_coeff.clone());
        let hi = Combo::new(q, d)
            .rational(&center + &const_term)
            .sqrt_q(sqrt_coeff);
        Some(Interval {
            lo: lo.endpoint(false),
            hi: hi.endpoint(true),
            lo_open: false,
            hi_open: false,
            empty: false,
            provenance: "cafure_matera_regular".into(),
        })
    } else {
        None
    };
    Ok((general, regular))
}

/// The lower forbidden interval: if N > T then in fact N > L, with
/// T = max(d^2 q^(n-2) / (4(1-alpha)), e q^(n-2) / (e alpha^2 - 1)) and
/// L = q^(n-1) - (d-1)(d-2) q^(n-3/2) - (d+1+e) q^(n-2).
/// The excluded set is (T, L], inward-rounded, empty when T >= L.
#[derive(Debug, Clone)]
pub struct LowerForbidden {
    pub threshold: BigRational,
    pub improved: Endpoint,
    pub interval: Interval,
    /// T / q^(n-2), for identity checks against worked parameter values.
    pub threshold_coeff: BigRational,
    /// Coefficient of q^(n-3/2) in L.
    pub sqrt_coeff: BigRational,
    /// Coefficient of q^(n-2) in L.
    pub const_coeff: BigRational,
}

pub fn lower_forbidden(
    d: u32,
    q: u64,
    n: u32,
    params: &BoundParams,
) -> Result<LowerForbidden> {
    if n < 3 {
        return Err(Error::DimensionTooSmall(n as usize, 3));
    }
    if d < 1 {
        return Err(Error::InvalidDegree(d as i64));
    }
    params.validate_lower()?;
    let qn2 = q_pow(q, n - 2);
    let one = BigRational::one();
    let t1 = big(d as i64 * d as i64) / (big(4) * (&one - &params.alpha));
    let ea2 = &params.e * &params.alpha * &params.alpha;
    let t2 = &params.e / (&ea2 - &one);
    let threshold_coeff = t1.max(t2);
    let threshold = &threshold_coeff * &qn2;

    let sqrt_coeff = coeff_d1d2(d);
    let const_coeff = big(d as i64 + 1) + &params.e;
    let improved_combo = Combo::new(q, d)
        .rational(q_pow(q, n - 1) - &const_coeff * &qn2)
        .sqrt_q(-&sqrt_coeff * &qn2);
    let improved = improved_combo.endpoint(false);

    let empty = threshold >= improved.value;
    let interval = Interval {
        lo: Endpoint::exact_rational(threshold.clone()),
        hi: improved.clone(),
        lo_open: true,
        hi_open: false,
        empty,
        provenance: "lower_exclusion".into(),
    };
    Ok(LowerForbidden {
        threshold,
        improved,
        interval,
        threshold_coeff,
        sqrt_coeff,
        const_coeff,
    })
}

/// The upper forbidden interval: when the basic condition on (d, q) holds
/// and N < T', in fact N < U, with
/// T' = min((2-gamma) q^(n-1) - (d-2)(d-3) q^(n-3/2) - (d^2/4+d+2) q^(n-2),
///          B gamma^2 q^(n-1), alpha^2 A q^(n-1), (1-alpha) q^(n+1)) and
/// U  = q^(n-1) + (d-1)(d-2) q^(n-3/2) + ((B+1)d + 1 + A/q) q^(n-2).
/// The excluded set is [U, T'), inward-rounded, empty when U >= T'.
#[derive(Debug, Clone)]
pub struct UpperForbidden {
    pub threshold: Endpoint,
    pub improved: Endpoint,
    pub interval: Interval,
    /// Coefficient of q^(n-3/2) in U.
    pub sqrt_coeff: BigRational,
    /// Coefficient of q^(n-2) in U.
    pub const_coeff: BigRational,
}

pub fn upper_forbidden(
    d: u32,
    q: u64,
    n: u32,
    params: &BoundParams,
) -> Result<UpperForbidden> {
    if n < 3 {
        return Err(Error::DimensionTooSmall(n as usize, 3));
    }
    if d < 1 {
        return Err(Error::InvalidDegree(d as i64));
    }
    params.validate_upper()?;
    if !condition_basic(d, q) {
        return Err(Error::Condition5Violated(d, q));
    }
    let one = BigRational::one();
    let qn1 = q_pow(q, n - 1);
    let qn2 = q_pow(q, n - 2);

    let term1 = Combo::new(q, d)
        .rational(
            (big(2) - &params.gamma) * &qn1
                - (big(d as i64 * d as i64) / big(4) + big(d as i64 + 2)) * &qn2,
        )
        .sqrt_q(-coeff_d2d3(d) * &qn2);
    let term1_lo = term1.endpoint(false);
    let term2 = &params.b * &params.gamma * &params.gamma * &qn1;
    let term3 = &params.alpha * &params.alpha * &params.a * &qn1;
    let term4 = (&one - &params.alpha) * q_pow(q, n + 1);

    // Minimum of the four candidates; the rational ones are exact.
    let mut threshold = term1_lo;
    for (v, sym) in [
        (term2, format!("B*gamma^2*q^{}", n - 1)),
        (term3, format!("alpha^2*A*q^{}", n - 1)),
        (term4, format!("(1-alpha)*q^{}", n + 1)),
    ] {
        if v < threshold.value {
            threshold = Endpoint {
                value: v,
                exact: true,
                symbolic: sym,
            };
        }
    }

    let sqrt_coeff = coeff_d1d2(d);
    let const_coeff = (&params.b + &one) * big(d as i64) + &one + &params.a / big_u(q);
    let improved_combo = Combo::new(q, d)
        .rational(&qn1 + &const_coeff * &qn2)
        .sqrt_q(&sqrt_coeff * &qn2);
    let improved = improved_combo.endpoint(true);

    let empty = improved.value >= threshold.value;
    let interval = Interval {
        lo: improved.clone(),
        hi: threshold.clone(),
        lo_open: false,
        hi_open: true,
        empty,
        provenance: "upper_exclusion".into(),
    };
    Ok(UpperForbidden {
        threshold,
        improved,
        interval,
        sqrt_coeff,
        const_coeff,
    })
}

/// Exact truth of (d^2-d-2) sqrt(q) + 2d - 1 <= q.
pub fn condition_basic(d: u32, q: u64) -> bool {
    let a = big(d as i64 * d as i64 - d as i64 - 2);
    let rhs = big_u(q) - big(2 * d as i64 - 1);
    cmp_mul_sqrt(&a, q, &rhs) != Ordering::Greater
}

/// Exact truth of
/// 2(d-2)^2 sqrt(q) + (d^2/4 + (B+2)d + 3 + A/q) < (1-gamma) q.
pub fn condition_default(
    d: u32,
    q: u64,
    gamma: &BigRational,
    a_param: &BigRational,
    b_param: &BigRational,
) -> bool {
    let sq_coeff = big(2 * (d as i64 - 2) * (d as i64 - 2));
    let constant = big(d as i64 * d as i64) / big(4)
        + (b_param + big(2)) * big(d as i64)
        + big(3)
        + a_param / big_u(q);
    let rhs = (BigRational::one() - gamma) * big_u(q) - constant;
    cmp_mul_sqrt(&sq_coeff, q, &rhs) == Ordering::Less
}

/// Regime of q relative to d in the bound landscape.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Regime {
    A,
    B,
    C,
    D,
}

impl Regime {
    pub fn label(self) -> &'static str {
        match self {
            Regime::A => "a",
            Regime::B => "b",
            Regime::C => "c",
            Regime::D => "d",
        }
    }
}

/// (3/2) d^4 - 2 d^3 + (5/2) d^2: above this threshold a geometrically
/// irreducible plane slice exists and N >= 1 follows.
pub fn kaltofen_threshold(d: u32) -> BigRational {
    let d = big(d as i64);
    big(3) / big(2) * d.pow(4) - big(2) * d.pow(3) + big(5) / big(2) * d.pow(2)
}

/// Classify q against the exact thresholds K(d), 5 d^(13/3), 15 d^(13/3):
/// a for q <= K(d); b for K(d) < q < 5 d^(13/3); c up to 15 d^(13/3);
/// d beyond. Fractional powers are compared by exact cubing.
pub fn regime_classify(d: u32, q: u64) -> Regime {
    let k = kaltofen_threshold(d);
    if big_u(q) <= k {
        return Regime::A;
    }
    match cmp_q_vs_c_d_13_3(q, 5, d) {
        Ordering::Less => Regime::B,
        _ => match cmp_q_vs_c_d_13_3(q, 15, d) {
            Ordering::Greater => Regime::D,
            _ => Regime::C,
        },
    }
}

/// A threshold of the shape ((d-1)(d-2) + sqrt(radicand))^2 / 4, rounded
/// up so that "q >= threshold" is a conservative test.
fn radical_threshold(d: u32, radicand: &Enclosure, symbolic: String) -> Endpoint {
    let c = coeff_d1d2(d);
    // Expanded form (c^2 + R)/4 + (c/2) sqrt(R) stays exact whenever the
    // sqrt term drops out.
    let enc = Enclosure::point(&c * &c)
        .add(radicand)
        .scale(&BigRational::new(1.into(), 4.into()))
        .add(&radicand.sqrt_of().scale(&(&c / big(2))));
    Endpoint::from_enclosure(&enc, true, symbolic)
}

/// Smallest q (rounded up) past which the general containing interval
/// already forces N above the lower-exclusion threshold, so the improved
/// lower bound N > q^(n-1) - (d-1)(d-2) q^(n-3/2) - (d+10) q^(n-2)
/// holds unconditionally.
#[derive(Debug, Clone)]
pub struct CorCdThreshold {
    pub threshold: Endpoint,
    /// Coefficient of q^(n-3/2) in the conclusion bound.
    pub sqrt_coeff: BigRational,
    /// Coefficient of q^(n-2) in the conclusion bound.
    pub const_coeff: BigRational,
}

pub fn cor_cd_threshold(d: u32) -> Result<CorCdThreshold> {
    if d < 1 {
        return Err(Error::InvalidDegree(d as i64));
    }
    let c = coeff_d1d2(d);
    let radicand = Enclosure::point(&c * &c)
        .add(&Enclosure::d_13_3(d).scale(&big(20)))
        .add(&Enclosure::from_int(3 * d as i64 * d as i64));
    let symbolic = format!(
        "(({c}) + sqrt(({c})^2 + 20*{d}^(13/3) + 3*{d}^2))^2 / 4",
        c = rational_string(&c),
    );
    Ok(CorCdThreshold {
        threshold: radical_threshold(d, &radicand, symbolic),
        sqrt_coeff: c,
        const_coeff: big(d as i64 + 10),
    })
}

/// Smallest q (rounded up) guaranteeing a nonsingular zero of a degree-d
/// absolutely irreducible polynomial avoiding a degree-e polynomial that
/// does not divide it.
pub fn smooth_point_threshold(d: u32, e: u32) -> Result<Endpoint> {
    if d < 1 {
        return Err(Error::InvalidDegree(d as i64));
    }
    let c = coeff_d1d2(d);
    let radicand = Enclosure::point(&c * &c).add(&Enclosure::from_int(
        4 * (d as i64 * d as i64 + d as i64 * e as i64 + 10),
    ));
    let symbolic = format!(
        "(({c}) + sqrt(({c})^2 + 4*({d}^2 + {d}*{e} + 10)))^2 / 4",
        c = rational_string(&c),
    );
    Ok(radical_threshold(d, &radicand, symbolic))
}

/// The assembled best bound on the integer N.
#[derive(Debug, Clone)]
pub struct BestBound {
    pub value: BigRational,
    /// Inclusive: N >= value (resp. N <= value). Exclusive: strict.
    pub inclusive: bool,
    /// The implied integer bound (N >= this, respectively N <= this).
    pub integer: BigInt,
    pub sources: Vec<String>,
}

/// Everything reported for one (d, q, n): the containing intervals, the
/// forbidden intervals, the regime, and the assembled best bounds.
#[derive(Debug, Clone)]
pub struct IntervalReport {
    pub d: u32,
    pub q: u64,
    pub n: u32,
    pub weil: Interval,
    pub gl: Interval,
    pub cm: Interval,
    pub cm_regular: Option<Interval>,
    pub lower_forbidden: LowerForbidden,
    pub upper_forbidden: Option<UpperForbidden>,
    pub condition_basic_holds: bool,
    pub regime: Regime,
    pub best_lower: BestBound,
    pub best_upper: BestBound,
}

pub fn assemble_report(
    d: u32,
    q: u64,
    n: u32,
    params: &BoundParams,
) -> Result<IntervalReport> {
    if n < 3 {
        return Err(Error::DimensionTooSmall(n as usize, 3));
    }
    let weil = weil_interval(d, q)?;
    let gl = gl_interval(d, q, n)?;
    let (cm, cm_regular) = cm_interval(d, q, n)?;
    let lower = lower_forbidden(d, q, n, params)?;
    let cond5 = condition_basic(d, q);
    let upper = if cond5 {
        Some(upper_forbidden(d, q, n, params)?)
    } else {
        None
    };
    let regime = regime_classify(d, q);

    // Sharpest inclusive lower bound among the containing intervals and
    // the regime floor. The floor of 1 in regimes b/c/d carries the caveat
    // that the underlying slice-existence argument gives slightly more
    // than N >= 1; exactly 1 is what is encoded.
    let mut lower_candidates: Vec<(BigRational, String)> = vec![
        (gl.lo.value.clone(), "ghorpade_lachaud".into()),
        (cm.lo.value.clone(), "cafure_matera".into()),
    ];
    if let Some(r) = &cm_regular {
        lower_candidates.push((r.lo.value.clone(), "cafure_matera_regular".into()));
    }
    match regime {
        Regime::A => {
            lower_candidates.push((BigRational::zero(), "trivial_nonnegative".into()))
        }
        _ => lower_candidates.push((BigRational::one(), "irreducible_slice_exists".into())),
    }
    let (mut best_lo_val, best_lo_src) = lower_candidates
        .into_iter()
        .max_by(|(a, _), (b, _)| a.cmp(b))
        .unwrap();
    let mut best_lo_sources = vec![best_lo_src];
    let mut best_lo_inclusive = true;
    if !lower.interval.empty
        && best_lo_val > lower.threshold
        && best_lo_val <= lower.improved.value
    {
        best_lo_val = lower.improved.value.clone();
        best_lo_inclusive = false;
        best_lo_sources.push("lower_exclusion".into());
    }
    let best_lower = BestBound {
        integer: if best_lo_inclusive {
            best_lo_val.ceil().to_integer()
        } else {
            best_lo_val.floor().to_integer() + 1
        },
        value: best_lo_val,
        inclusive: best_lo_inclusive,
        sources: best_lo_sources,
    };

    let mut upper_candidates: Vec<(BigRational, String)> = vec![
        (q_pow(q, n), "ambient_space".into()),
        (gl.hi.value.clone(), "ghorpade_lachaud".into()),
        (cm.hi.value.clone(), "cafure_matera".into()),
    ];
    if let Some(r) = &cm_regular {
        upper_candidates.push((r.hi.value.clone(), "cafure_matera_regular".into()));
    }
    let (mut best_hi_val, best_hi_src) = upper_candidates
        .into_iter()
        .min_by(|(a, _), (b, _)| a.cmp(b))
        .unwrap();
    let mut best_hi_sources = vec![best_hi_src];
    let mut best_hi_inclusive = true;
    if let Some(uf) = &upper {
        if !uf.interval.empty
            && best_hi_val >= uf.improved.value
            && best_hi_val < uf.threshold.value
        {
            best_hi_val = uf.improved.value.clone();
            best_hi_inclusive = false;
            best_hi_sources.push("upper_exclusion".into());
        }
    }
    let best_upper = BestBound {
        integer: if best_hi_inclusive {
            best_hi_val.floor().to_integer()
        } else {
            best_hi_val.ceil().to_integer() - 1
        },
        value: best_hi_val,
        inclusive: best_hi_inclusive,
        sources: best_hi_sources,
    };

    Ok(IntervalReport {
        d,
        q,
        n,
        weil,
        gl,
        cm,
        cm_regular,
        lower_forbidden: lower,
        upper_forbidden: upper,
        condition_basic_holds: cond5,
        regime,
        best_lower,
        best_upper,
    })
}
