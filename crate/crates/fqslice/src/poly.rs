//! Sparse multivariate polynomials over a finite field.
//!
//! Exponent vectors map to nonzero coefficients; the zero polynomial has an
//! empty term map and total degree "minus infinity" (`None`). The text
//! grammar is:
//!
//! ```text
//! poly   := ['+' | '-'] term (('+' | '-') term)*
//! term   := [coeff '*']? factor ('*' factor)*
//! factor := 'x' index ['^' exponent] | 'g' ['^' exponent] | integer
//! ```
//!
//! Variables are `x0 .. x(n-1)`; whitespace is insignificant; `g` denotes
//! the fixed multiplicative generator, needed to spell coefficients outside
//! the prime subfield.

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::plane::AffinePlane;
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Debug, Clone)]
pub struct MultiPoly {
    n: usize,
    terms: BTreeMap<Vec<u16>, FieldElement>,
    field: Arc<FieldSpec>,
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && *self.field == *other.field && self.terms == other.terms
    }
}
impl Eq for MultiPoly {}

impl MultiPoly {
    pub fn zero(field: Arc<FieldSpec>, n: usize) -> Self {
        MultiPoly {
            n,
            terms: BTreeMap::new(),
            field,
        }
    }

    pub fn constant(field: Arc<FieldSpec>, n: usize, c: FieldElement) -> Self {
        let mut p = Self::zero(field, n);
        if !c.is_zero() {
            p.terms.insert(vec![0; n], c);
        }
        p
    }

    /// Build from (exponent vector, coefficient) pairs; repeated exponent
    /// vectors are summed, zero coefficients dropped.
    pub fn from_terms(
        field: Arc<FieldSpec>,
        n: usize,
        terms: impl IntoIterator<Item = (Vec<u16>, FieldElement)>,
    ) -> Result<Self> {
        let mut poly = Self::zero(field, n);
        for (exps, c) in terms {
            if exps.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "exponent vector of length {} in {} variables",
                    exps.len(),
                    n
                )));
            }
            poly.add_term(&exps, c);
        }
        Ok(poly)
    }

    fn add_term(&mut self, exps: &[u16], c: FieldElement) {
        if c.is_zero() {
            return;
        }
        let f = &self.field;
        match self.terms.get_mut(exps) {
            Some(existing) => {
                let sum = f.add(*existing, c);
                if sum.is_zero() {
                    self.terms.remove(exps);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(exps.to_vec(), c);
            }
        }
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u16>, FieldElement)> {
        self.terms.iter().map(|(e, &c)| (e, c))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` encodes the degree of the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as u32).sum())
            .max()
    }

    /// Largest exponent of one variable across all terms.
    pub fn degree_in(&self, var: usize) -> Option<u16> {
        self.terms.keys().map(|e| e[var]).max()
    }

    pub fn eval(&self, point: &[FieldElement]) -> Result<FieldElement> {
        if point.len() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "point of length {} for {} variables",
                point.len(),
                self.n
            )));
        }
        let f = &self.field;
        let mut acc = FieldElement::ZERO;
        for (exps, c) in &self.terms {
            let mut t = *c;
            for (i, &e) in exps.iter().enumerate() {
                if e > 0 {
                    t = f.mul(t, f.pow(point[i], e as u64));
                }
            }
            acc = f.add(acc, t);
        }
        Ok(acc)
    }

    pub fn add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e, c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> MultiPoly {
        let f = &self.field;
        let terms = self
            .terms
            .iter()
            .map(|(e, &c)| (e.clone(), f.neg(c)))
            .collect();
        MultiPoly {
            n: self.n,
            terms,
            field: self.field.clone(),
        }
    }

    pub fn sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_compatible(other)?;
        let f = &self.field;
        let mut out = MultiPoly::zero(self.field.clone(), self.n);
        for (ea, ca) in self.terms() {
            for (eb, cb) in other.terms() {
                let exps: Vec<u16> = ea.iter().zip(eb).map(|(&a, &b)| a + b).collect();
                out.add_term(&exps, f.mul(ca, cb));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: FieldElement) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.field.clone(), self.n);
        }
        let f = &self.field;
        let terms = self
            .terms
            .iter()
            .map(|(e, &a)| (e.clone(), f.mul(a, c)))
            .collect();
        MultiPoly {
            n: self.n,
            terms,
            field: self.field.clone(),
        }
    }

    fn check_compatible(&self, other: &MultiPoly) -> Result<()> {
        if self.n != other.n || *self.field != *other.field {
            return Err(Error::DimensionMismatch(
                "polynomials live in different rings".into(),
            ));
        }
        Ok(())
    }

    /// Leading term under graded lexicographic order.
    pub fn leading_term(&self) -> Option<(&Vec<u16>, FieldElement)> {
        self.terms
            .iter()
            .max_by(|(ea, _), (eb, _)| {
                let da: u32 = ea.iter().map(|&x| x as u32).sum();
                let db: u32 = eb.iter().map(|&x| x as u32).sum();
                da.cmp(&db).then_with(|| ea.cmp(eb))
            })
            .map(|(e, &c)| (e, c))
    }

    /// Exact division by a single divisor under graded-lex reduction.
    /// Returns the quotient when the remainder is zero, `None` otherwise.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Result<Option<MultiPoly>> {
        self.check_compatible(divisor)?;
        let (lt_exp, lt_coef) = divisor
            .leading_term()
            .ok_or(Error::DivisionByZero)?;
        let lt_exp = lt_exp.clone();
        let f = self.field.clone();
        let lt_inv = f.inv(lt_coef)?;
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(f.clone(), self.n);
        while let Some((re, rc)) = rem.leading_term() {
            let re = re.clone();
            if re.iter().zip(&lt_exp).any(|(&a, &b)| a < b) {
                return Ok(None);
            }
            let qe: Vec<u16> = re.iter().zip(&lt_exp).map(|(&a, &b)| a - b).collect();
            let qc = f.mul(rc, lt_inv);
            quot.add_term(&qe, qc);
            let mut mono = MultiPoly::zero(f.clone(), self.n);
            mono.add_term(&qe, qc);
            rem = rem.sub(&mono.mul(divisor)?)?;
        }
        Ok(Some(quot))
    }

    /// Map coefficients into an extension field through an embedding table
    /// produced by [`FieldSpec::embedding_into`].
    pub fn map_coefficients(
        &self,
        ext: Arc<FieldSpec>,
        table: &[FieldElement],
    ) -> MultiPoly {
        let terms = self
            .terms
            .iter()
            .map(|(e, &c)| (e.clone(), table[c.index() as usize]))
            .collect();
        MultiPoly {
            n: self.n,
            terms,
            field: ext,
        }
    }

    /// Restrict to an affine plane: G(s, t) = P(base + s*u + t*v) as a
    /// polynomial in two variables, by symbolic substitution and expansion.
    pub fn restrict_to_plane(&self, plane: &AffinePlane) -> Result<MultiPoly> {
        if plane.dim() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "plane in dimension {} against {} variables",
                plane.dim(),
                self.n
            )));
        }
        if **plane.field() != *self.field {
            return Err(Error::DimensionMismatch(
                "plane and polynomial fields differ".into(),
            ));
        }
        let f = self.field.clone();
        let mut out = Bivariate::zero();
        // Per-variable substitution a + b*s + c*t, powered on demand.
        let mut power_cache: Vec<Vec<Bivariate>> = (0..self.n)
            .map(|i| {
                vec![Bivariate::constant(FieldElement::ONE), Bivariate::linear(
                    plane.base()[i],
                    plane.u()[i],
                    plane.v()[i],
                )]
            })
            .collect();
        for (exps, coef) in &self.terms {
            let mut acc = Bivariate::constant(*coef);
            for (i, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut power_cache[i];
                while cache.len() <= e as usize {
                    let next = cache.last().unwrap().mul(&cache[1], &f);
                    cache.push(next);
                }
                acc = acc.mul(&cache[e as usize], &f);
            }
            out.add_assign(&acc, &f);
        }
        out.into_multipoly(f)
    }

    /// Render in the input grammar; parsing the result reproduces the
    /// polynomial exactly.
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let f = &self.field;
        let mut parts = Vec::new();
        // Graded-lex descending for readability.
        let mut entries: Vec<_> = self.terms.iter().collect();
        entries.sort_by(|(ea, _), (eb, _)| {
            let da: u32 = ea.iter().map(|&x| x as u32).sum();
            let db: u32 = eb.iter().map(|&x| x as u32).sum();
            db.cmp(&da).then_with(|| eb.cmp(ea))
        });
        for (exps, &c) in entries {
            let mut factors = Vec::new();
            let is_const_term = exps.iter().all(|&e| e == 0);
            if f.in_prime_subfield(c) {
                if c != FieldElement::ONE || is_const_term {
                    factors.push(c.index().to_string());
                }
            } else {
                let e = f.dlog(c).unwrap();
                factors.push(if e == 1 { "g".into() } else { format!("g^{e}") });
            }
            for (i, &e) in exps.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("x{i}")),
                    _ => factors.push(format!("x{i}^{e}")),
                }
            }
            parts.push(factors.join("*"));
        }
        parts.join(" + ")
    }
}

impl std::fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Dense bivariate scratch representation used during plane restriction:
/// `coef[i][j]` multiplies s^i t^j.
struct Bivariate {
    coef: Vec<Vec<FieldElement>>,
}

impl Bivariate {
    fn zero() -> Self {
        Bivariate { coef: Vec::new() }
    }

    fn constant(c: FieldElement) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Bivariate {
                coef: vec![vec![c]],
            }
        }
    }

    fn linear(a: FieldElement, b: FieldElement, c: FieldElement) -> Self {
        Bivariate {
            coef: vec![vec![a, c], vec![b, FieldElement::ZERO]],
        }
    }

    fn get(&self, i: usize, j: usize) -> FieldElement {
        self.coef
            .get(i)
            .and_then(|row| row.get(j))
            .copied()
            .unwrap_or(FieldElement::ZERO)
    }

    fn mul(&self, other: &Bivariate, f: &FieldSpec) -> Bivariate {
        if self.coef.is_empty() || other.coef.is_empty() {
            return Bivariate::zero();
        }
        let rows = self.coef.len() + other.coef.len() - 1;
        let cols = self.coef.iter().map(|r| r.len()).max().unwrap_or(0)
            + other.coef.iter().map(|r| r.len()).max().unwrap_or(0);
        let mut out = vec![vec![FieldElement::ZERO; cols.max(1)]; rows];
        for (i, row) in self.coef.iter().enumerate() {
            for (j, &a) in row.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (k, orow) in other.coef.iter().enumerate() {
                    for (l, &b) in orow.iter().enumerate() {
                        if b.is_zero() {
                            continue;
                        }
                        out[i + k][j + l] = f.add(out[i + k][j + l], f.mul(a, b));
                    }
                }
            }
        }
        Bivariate { coef: out }
    }

    fn add_assign(&mut self, other: &Bivariate, f: &FieldSpec) {
        let rows = self.coef.len().max(other.coef.len());
        let cols = self
            .coef
            .iter()
            .chain(&other.coef)
            .map(|r| r.len())
            .max()
            .unwrap_or(0);
        let mut out = vec![vec![FieldElement::ZERO; cols]; rows];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = f.add(self.get(i, j), other.get(i, j));
            }
        }
        self.coef = out;
    }

    fn into_multipoly(self, f: Arc<FieldSpec>) -> Result<MultiPoly> {
        let mut terms = Vec::new();
        for (i, row) in self.coef.iter().enumerate() {
            for (j, &c) in row.iter().enumerate() {
                if !c.is_zero() {
                    terms.push((vec![i as u16, j as u16], c));
                }
            }
        }
        MultiPoly::from_terms(f, 2, terms)
    }
}

/// Parse the text grammar into a polynomial in `n` variables.
pub fn parse_poly(text: &str, n: usize, field: Arc<FieldSpec>) -> Result<MultiPoly> {
    Parser {
        bytes: text.as_bytes(),
        pos: 0,
        n,
        field,
    }
    .parse()
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    n: usize,
    field: Arc<FieldSpec>,
}

impl Parser<'_> {
    fn parse(mut self) -> Result<MultiPoly> {
        let mut poly = MultiPoly::zero(self.field.clone(), self.n);
        self.skip_ws();
        if self.peek().is_none() {
            return Err(self.err("empty input"));
        }
        let mut sign_negative = false;
        if let Some(c) = self.peek() {
            if c == b'+' || c == b'-' {
                sign_negative = c == b'-';
                self.pos += 1;
            }
        }
        loop {
            let term = self.parse_term()?;
            let term = if sign_negative { term.neg() } else { term };
            poly = poly.add(&term)?;
            self.skip_ws();
            match self.peek() {
                None => break,
                Some(b'+') => {
                    sign_negative = false;
                    self.pos += 1;
                }
                Some(b'-') => {
                    sign_negative = true;
                    self.pos += 1;
                }
                Some(c) => {
                    return Err(self.err(&format!("expected '+' or '-', found {:?}", c as char)))
                }
            }
        }
        Ok(poly)
    }

    fn parse_term(&mut self) -> Result<MultiPoly> {
        let mut acc = MultiPoly::constant(self.field.clone(), self.n, FieldElement::ONE);
        let mut first = true;
        loop {
            self.skip_ws();
            let factor = self.parse_factor(first)?;
            acc = acc.mul(&factor)?;
            first = false;
            self.skip_ws();
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn parse_factor(&mut self, _first: bool) -> Result<MultiPoly> {
        self.skip_ws();
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                let index = self.parse_usize("variable index")?;
                if index >= self.n {
                    return Err(Error::VariableOutOfRange {
                        index,
                        nvars: self.n,
                    });
                }
                let e = self.parse_optional_exponent()?;
                let mut exps = vec![0u16; self.n];
                exps[index] = e;
                MultiPoly::from_terms(self.field.clone(), self.n, [(exps, FieldElement::ONE)])
            }
            Some(b'g') => {
                self.pos += 1;
                let e = self.parse_optional_exponent()?;
                let c = self.field.generator_pow(e as u64);
                Ok(MultiPoly::constant(self.field.clone(), self.n, c))
            }
            Some(c) if c.is_ascii_digit() => {
                let v = self.parse_u64("coefficient")?;
                let c = self.field.from_int((v % self.field.p()) as i64);
                Ok(MultiPoly::constant(self.field.clone(), self.n, c))
            }
            Some(c) => Err(self.err(&format!("unexpected {:?}", c as char))),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn parse_optional_exponent(&mut self) -> Result<u16> {
        self.skip_ws();
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.parse_u64("exponent")?;
            u16::try_from(e).map_err(|_| self.err("exponent too large"))
        } else {
            Ok(1)
        }
    }

    fn parse_usize(&mut self, what: &str) -> Result<usize> {
        Ok(self.parse_u64(what)? as usize)
    }

    fn parse_u64(&mut self, what: &str) -> Result<u64> {
        let start = self.pos;
        while self.peek().map_or(false, |c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err(&format!("expected {what}")));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err(&format!("{what} out of range")))
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().map_or(false, |c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn err(&self, message: &str) -> Error {
        Error::SyntaxError {
            position: self.pos,
            message: message.into(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane::AffinePlane;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn f(p: u64) -> Arc<FieldSpec> {
        FieldSpec::new(p, 1).unwrap()
    }

    #[test]
    fn parse_basic_terms() {
        let f5 = f(5);
        let p = parse_poly("x0^2 + 3*x1*x2 + 4", 3, f5).unwrap();
        assert_eq!(p.term_count(), 3);
        assert_eq!(p.total_degree(), Some(2));
    }

    #[test]
    fn parse_zero_and_cancellation() {
        let f5 = f(5);
        let z = parse_poly("0", 3, f5.clone()).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.total_degree(), None);
        let f2 = f(2);
        let z2 = parse_poly("x0 - x0", 1, f2).unwrap();
        assert!(z2.is_zero());
    }

    #[test]
    fn parse_rejects_bad_input() {
        let f5 = f(5);
        assert!(matches!(
            parse_poly("x7", 3, f5.clone()),
            Err(Error::VariableOutOfRange { index: 7, nvars: 3 })
        ));
        assert!(matches!(
            parse_poly("x0 +", 3, f5.clone()),
            Err(Error::SyntaxError { .. })
        ));
        assert!(matches!(
            parse_poly("", 3, f5),
            Err(Error::SyntaxError { .. })
        ));
    }

    #[test]
    fn generator_coefficients_in_extension() {
        let f9 = FieldSpec::new(3, 2).unwrap();
        let p = parse_poly("g^3*x0 + g + 1", 1, f9.clone()).unwrap();
        let roundtrip = parse_poly(&p.to_text(), 1, f9).unwrap();
        assert_eq!(p, roundtrip);
    }

    #[test]
    fn eval_examples() {
        let f5 = f(5);
        let p = parse_poly("x0^2 + x1", 2, f5.clone()).unwrap();
        let v = p.eval(&[f5.element(2), f5.element(3)]).unwrap();
        assert_eq!(v, f5.element(2));

        let one = parse_poly("1", 2, f5.clone()).unwrap();
        assert_eq!(
            one.eval(&[f5.element(4), f5.element(0)]).unwrap(),
            FieldElement::ONE
        );

        let f3 = f(3);
        let p = parse_poly("x0*x1*x2", 3, f3.clone()).unwrap();
        let v = p
            .eval(&[f3.element(1), f3.element(2), f3.element(2)])
            .unwrap();
        assert_eq!(v, FieldElement::ONE);
    }

    #[test]
    fn eval_dimension_mismatch() {
        let f5 = f(5);
        let p = parse_poly("x0", 2, f5.clone()).unwrap();
        assert!(matches!(
            p.eval(&[f5.element(1)]),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn format_parse_roundtrip_random() {
        let mut rng = StdRng::seed_from_u64(11);
        for p in [2u64, 5, 17] {
            let field = f(p);
            for _ in 0..40 {
                let nterms = rng.gen_range(0..6);
                let terms: Vec<_> = (0..nterms)
                    .map(|_| {
                        let exps: Vec<u16> =
                            (0..3).map(|_| rng.gen_range(0..4u16)).collect();
                        let c = field.element(rng.gen_range(0..p));
                        (exps, c)
                    })
                    .collect();
                let poly = MultiPoly::from_terms(field.clone(), 3, terms).unwrap();
                let reparsed = parse_poly(&poly.to_text(), 3, field.clone()).unwrap();
                assert_eq!(poly, reparsed, "text: {}", poly.to_text());
            }
        }
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism() {
        let mut rng = StdRng::seed_from_u64(7);
        let field = f(13);
        for _ in 0..50 {
            let rand_poly = |rng: &mut StdRng| {
                let terms: Vec<_> = (0..rng.gen_range(0..5))
                    .map(|_| {
                        let exps: Vec<u16> =
                            (0..2).map(|_| rng.gen_range(0..5u16)).collect();
                        (exps, field.element(rng.gen_range(0..13)))
                    })
                    .collect();
                MultiPoly::from_terms(field.clone(), 2, terms).unwrap()
            };
            let a = rand_poly(&mut rng);
            let b = rand_poly(&mut rng);
            let x = [
                field.element(rng.gen_range(0..13)),
                field.element(rng.gen_range(0..13)),
            ];
            assert_eq!(
                a.mul(&b).unwrap().eval(&x).unwrap(),
                field.mul(a.eval(&x).unwrap(), b.eval(&x).unwrap())
            );
            assert_eq!(
                a.add(&b).unwrap().eval(&x).unwrap(),
                field.add(a.eval(&x).unwrap(), b.eval(&x).unwrap())
            );
        }
    }

    #[test]
    fn restriction_axis_planes() {
        let f7 = f(7);
        let p = parse_poly("x0", 3, f7.clone()).unwrap();
        let e = |i: usize| {
            let mut v = vec![FieldElement::ZERO; 3];
            v[i] = FieldElement::ONE;
            v
        };
        let zero = vec![FieldElement::ZERO; 3];
        let h = AffinePlane::new(f7.clone(), zero.clone(), e(0), e(1)).unwrap();
        let g = p.restrict_to_plane(&h).unwrap();
        assert_eq!(g, parse_poly("x0", 2, f7.clone()).unwrap());

        let h2 = AffinePlane::new(f7.clone(), zero, e(1), e(2)).unwrap();
        let g2 = p.restrict_to_plane(&h2).unwrap();
        assert!(g2.is_zero());
    }

    #[test]
    fn restriction_expands_affine_shift() {
        // P = x0^2 + x1 at base (1,0,0), directions e0, e1 over F_3:
        // G = (1+s)^2 + t = s^2 + 2s + t + 1.
        let f3 = f(3);
        let p = parse_poly("x0^2 + x1", 3, f3.clone()).unwrap();
        let mut base = vec![FieldElement::ZERO; 3];
        base[0] = FieldElement::ONE;
        let mut u = vec![FieldElement::ZERO; 3];
        u[0] = FieldElement::ONE;
        let mut v = vec![FieldElement::ZERO; 3];
        v[1] = FieldElement::ONE;
        let h = AffinePlane::new(f3.clone(), base, u, v).unwrap();
        let g = p.restrict_to_plane(&h).unwrap();
        let expected = parse_poly("x0^2 + 2*x0 + x1 + 1", 2, f3).unwrap();
        assert_eq!(g, expected);
    }

    #[test]
    fn restriction_commutes_with_evaluation() {
        let mut rng = StdRng::seed_from_u64(3);
        for p in [2u64, 3, 5, 17] {
            let field = f(p);
            for _ in 0..6 {
                let terms: Vec<_> = (0..rng.gen_range(1..6))
                    .map(|_| {
                        let exps: Vec<u16> =
                            (0..3).map(|_| rng.gen_range(0..3u16)).collect();
                        (exps, field.element(rng.gen_range(0..p)))
                    })
                    .collect();
                let poly = MultiPoly::from_terms(field.clone(), 3, terms).unwrap();
                let h = crate::plane::sample_plane(&field, 3, &mut rng).unwrap();
                let g = poly.restrict_to_plane(&h).unwrap();
                assert!(g.total_degree().unwrap_or(0) <= poly.total_degree().unwrap_or(0));
                for s in field.elements() {
                    for t in field.elements() {
                        let on_plane = h.point_at(s, t);
                        assert_eq!(
                            g.eval(&[s, t]).unwrap(),
                            poly.eval(&on_plane).unwrap()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn exact_division() {
        let f5 = f(5);
        let a = parse_poly("x0^2 - x1^2", 2, f5.clone()).unwrap();
        let d = parse_poly("x0 - x1", 2, f5.clone()).unwrap();
        let q = a.div_exact(&d).unwrap().unwrap();
        assert_eq!(q.mul(&d).unwrap(), a);
        let nd = parse_poly("x0 + 1", 2, f5).unwrap();
        assert!(a.div_exact(&nd).unwrap().is_none());
    }
}
