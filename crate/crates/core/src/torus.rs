//! The based quantum torus: exact addition, twisted multiplication, exact
//! division, and q-corrected ordered frame products.
//!
//! Elements are finite scalar combinations of basis monomials `X^e`,
//! `e` in `Z^m`, with `X^e X^f = u^{Lambda(e,f)} X^{e+f}` (`u = q^{1/2}`, so
//! the twist `q^{Lambda(e,f)/2}` is the u-power of the pairing itself).

use crate::error::{Error, Result};
use crate::imat::IMat;
use crate::scalar::{Scalar, ScalarRing};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// Exponent vector ordered by graded lexicographic order: total degree first,
/// then lexicographic. This order is compatible with addition, which is what
/// the division algorithm needs; it is fixed once for determinism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expo(pub Vec<i64>);

impl Expo {
    fn degree(&self) -> i64 {
        self.0.iter().sum()
    }

    fn add(&self, other: &Expo) -> Expo {
        Expo(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn sub(&self, other: &Expo) -> Expo {
        Expo(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Expo {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Expo {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug)]
struct CtxRepr {
    rank: usize,
    lambda: IMat,
    ring: ScalarRing,
}

/// Shared, immutable torus data: the rank, the skew form, and the coefficient
/// ring.
#[derive(Debug, Clone)]
pub struct TorusContext(Arc<CtxRepr>);

impl PartialEq for TorusContext {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.rank == other.0.rank
                && self.0.lambda == other.0.lambda
                && self.0.ring == other.0.ring)
    }
}
impl Eq for TorusContext {}

impl TorusContext {
    pub fn new(lambda: IMat, ring: ScalarRing) -> Result<Self> {
        if !lambda.is_skew_symmetric() {
            return Err(Error::InvalidArg("Lambda must be skew-symmetric".into()));
        }
        Ok(TorusContext(Arc::new(CtxRepr {
            rank: lambda.rows(),
            lambda,
            ring,
        })))
    }

    pub fn rank(&self) -> usize {
        self.0.rank
    }

    pub fn lambda(&self) -> &IMat {
        &self.0.lambda
    }

    pub fn ring(&self) -> &ScalarRing {
        &self.0.ring
    }

    fn pair(&self, e: &Expo, f: &Expo) -> i64 {
        self.0.lambda.pair(&e.0, &f.0).expect("rank checked")
    }
}

/// Which side the quotient sits on in exact division:
/// `Left` solves `c * a = b`, `Right` solves `a * c = b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuotientSide {
    Left,
    Right,
}

/// An element of the based quantum torus. Terms are kept in a canonical
/// (graded-lex) order and never store a zero scalar.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusElement {
    ctx: TorusContext,
    terms: BTreeMap<Expo, Scalar>,
}

impl TorusElement {
    pub fn zero(ctx: &TorusContext) -> Self {
        TorusElement {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ctx: &TorusContext) -> Self {
        Self::monomial(ctx, &vec![0; ctx.rank()], Scalar::one(ctx.ring())).expect("rank 0 vector")
    }

    /// The single-term element `s * X^e`.
    pub fn monomial(ctx: &TorusContext, e: &[i64], s: Scalar) -> Result<Self> {
        if e.len() != ctx.rank() {
            return Err(Error::RankMismatch {
                got: e.len(),
                want: ctx.rank(),
            });
        }
        if s.ring() != ctx.ring() {
            return Err(Error::RingMismatch);
        }
        let mut terms = BTreeMap::new();
        if !s.is_zero() {
            terms.insert(Expo(e.to_vec()), s);
        }
        Ok(TorusElement {
            ctx: ctx.clone(),
            terms,
        })
    }

    pub fn basis_monomial(ctx: &TorusContext, e: &[i64]) -> Result<Self> {
        Self::monomial(ctx, e, Scalar::one(ctx.ring()))
    }

    pub fn context(&self) -> &TorusContext {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[i64], &Scalar)> {
        self.terms.iter().map(|(e, s)| (e.0.as_slice(), s))
    }

    /// The single (exponent, scalar) pair of a one-term element.
    pub fn as_monomial(&self) -> Option<(&[i64], &Scalar)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, s)| (e.0.as_slice(), s))
        } else {
            None
        }
    }

    fn check_ctx(&self, other: &TorusElement) -> Result<()> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn add(&self, other: &TorusElement) -> Result<TorusElement> {
        self.check_ctx(other)?;
        let mut terms = self.terms.clone();
        for (e, s) in &other.terms {
            match terms.get_mut(e) {
                Some(t) => {
                    *t = t.add(s)?;
                    if t.is_zero() {
                        terms.remove(e);
                    }
                }
                None => {
                    terms.insert(e.clone(), s.clone());
                }
            }
        }
        Ok(TorusElement {
            ctx: self.ctx.clone(),
            terms,
        })
    }

    pub fn neg(&self) -> TorusElement {
        TorusElement {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, s)| (e.clone(), s.neg()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &TorusElement) -> Result<TorusElement> {
        self.add(&other.neg())
    }

    /// Scalar multiple.
    pub fn scale(&self, s: &Scalar) -> Result<TorusElement> {
        if s.ring() != self.ctx.ring() {
            return Err(Error::RingMismatch);
        }
        if s.is_zero() {
            return Ok(TorusElement::zero(&self.ctx));
        }
        let mut terms = BTreeMap::new();
        for (e, t) in &self.terms {
            let v = t.mul(s)?;
            if !v.is_zero() {
                terms.insert(e.clone(), v);
            }
        }
        Ok(TorusElement {
            ctx: self.ctx.clone(),
            terms,
        })
    }

    /// Multiple by `u^k`.
    pub fn scale_u(&self, k: i64) -> TorusElement {
        self.scale(&Scalar::u_power(self.ctx.ring(), k))
            .expect("same ring")
    }

    /// Twisted product: bilinear extension of
    /// `(s X^e)(t X^f) = s t u^{Lambda(e,f)} X^{e+f}`.
    pub fn mul(&self, other: &TorusElement) -> Result<TorusElement> {
        self.check_ctx(other)?;
        let mut terms: BTreeMap<Expo, Scalar> = BTreeMap::new();
        for (e, s) in &self.terms {
            for (f, t) in &other.terms {
                let twist = Scalar::u_power(self.ctx.ring(), self.ctx.pair(e, f));
                let coeff = s.mul(t)?.mul(&twist)?;
                if coeff.is_zero() {
                    continue;
                }
                let g = e.add(f);
                match terms.get_mut(&g) {
                    Some(acc) => {
                        *acc = acc.add(&coeff)?;
                        if acc.is_zero() {
                            terms.remove(&g);
                        }
                    }
                    None => {
                        terms.insert(g, coeff);
                    }
                }
            }
        }
        Ok(TorusElement {
            ctx: self.ctx.clone(),
            terms,
        })
    }

    pub fn pow(&self, n: u32) -> Result<TorusElement> {
        let mut acc = TorusElement::one(&self.ctx);
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Exact division: finds the torus element `c` with `c*a = b` (side
    /// `Left`) or `a*c = b` (side `Right`), failing with [`Error::NotDivisible`]
    /// when no such element exists.
    ///
    /// Leading terms are eliminated in graded-lex order. Because minimal and
    /// maximal terms of a product multiply without cancellation (the torus is
    /// a domain under an addition-compatible order), the support of any true
    /// quotient is confined to the coordinate box spanned by
    /// `supp(b) - supp(a)`; an eliminated exponent escaping that box proves
    /// the quotient does not exist, which also bounds the loop.
    pub fn exact_div(
        b: &TorusElement,
        a: &TorusElement,
        side: QuotientSide,
    ) -> Result<TorusElement> {
        b.check_ctx(a)?;
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if b.is_zero() {
            return Ok(TorusElement::zero(&b.ctx));
        }
        let rank = b.ctx.rank();
        let mut lo = vec![i64::MAX; rank];
        let mut hi = vec![i64::MIN; rank];
        for (e, _) in b.terms.iter() {
            for i in 0..rank {
                lo[i] = lo[i].min(e.0[i]);
                hi[i] = hi[i].max(e.0[i]);
            }
        }
        let mut alo = vec![i64::MAX; rank];
        let mut ahi = vec![i64::MIN; rank];
        for (e, _) in a.terms.iter() {
            for i in 0..rank {
                alo[i] = alo[i].min(e.0[i]);
                ahi[i] = ahi[i].max(e.0[i]);
            }
        }
        let in_box = |e: &Expo| -> bool {
            (0..rank).all(|i| e.0[i] >= lo[i] - alo[i] && e.0[i] <= hi[i] - ahi[i])
        };
        let (lead_a, lead_a_s) = a
            .terms
            .iter()
            .next_back()
            .map(|(e, s)| (e.clone(), s.clone()))
            .unwrap();
        let mut rem = b.clone();
        let mut quot = TorusElement::zero(&b.ctx);
        while !rem.is_zero() {
            let (lead_r, lead_r_s) = rem
                .terms
                .iter()
                .next_back()
                .map(|(e, s)| (e.clone(), s.clone()))
                .unwrap();
            let e_q = lead_r.sub(&lead_a);
            if !in_box(&e_q) {
                return Err(Error::NotDivisible);
            }
            let twist = match side {
                QuotientSide::Left => b.ctx.pair(&e_q, &lead_a),
                QuotientSide::Right => b.ctx.pair(&lead_a, &e_q),
            };
            let s_q = lead_r_s
                .div_exact(&lead_a_s)?
                .mul(&Scalar::u_power(b.ctx.ring(), -twist))?;
            let term = TorusElement::monomial(&b.ctx, &e_q.0, s_q)?;
            let prod = match side {
                QuotientSide::Left => term.mul(a)?,
                QuotientSide::Right => a.mul(&term)?,
            };
            rem = rem.sub(&prod)?;
            quot = quot.add(&term)?;
        }
        Ok(quot)
    }

    /// Maps every coefficient through the free-to-related reduction.
    pub fn reduce_to(&self, ctx: &TorusContext) -> Result<TorusElement> {
        if ctx.lambda() != self.ctx.lambda() {
            return Err(Error::ContextMismatch);
        }
        let mut terms = BTreeMap::new();
        for (e, s) in &self.terms {
            let v = s.reduce_to(ctx.ring())?;
            if !v.is_zero() {
                terms.insert(e.clone(), v);
            }
        }
        Ok(TorusElement {
            ctx: ctx.clone(),
            terms,
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "Lambda": self.ctx.lambda().to_json(),
            "terms": self
                .terms
                .iter()
                .map(|(e, s)| serde_json::json!({ "exp": e.0, "scalar": s.to_json() }))
                .collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &serde_json::Value, ring: &ScalarRing) -> Result<TorusElement> {
        let lambda = IMat::from_json(
            v.get("Lambda")
                .ok_or_else(|| Error::Json("torus element needs Lambda".into()))?,
        )?;
        let ctx = TorusContext::new(lambda, ring.clone())?;
        let mut out = TorusElement::zero(&ctx);
        let terms = v
            .get("terms")
            .and_then(|t| t.as_array())
            .ok_or_else(|| Error::Json("torus element needs terms".into()))?;
        for t in terms {
            let exp: Vec<i64> = serde_json::from_value(
                t.get("exp")
                    .ok_or_else(|| Error::Json("term needs exp".into()))?
                    .clone(),
            )
            .map_err(|e| Error::Json(e.to_string()))?;
            let s = Scalar::from_json(
                t.get("scalar")
                    .ok_or_else(|| Error::Json("term needs scalar".into()))?,
            )?
            .reduce_to(ring)?;
            out = out.add(&TorusElement::monomial(&ctx, &exp, s)?)?;
        }
        Ok(out)
    }
}

impl fmt::Display for TorusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, s) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({s})*X^{:?}", e.0)?;
        }
        Ok(())
    }
}

/// The q-corrected ordered power product of frame variables:
/// `M(c) = u^{-sum_{i<j} c_i c_j lambda_ij} V_1^{c_1} ... V_m^{c_m}`,
/// the inverse of the frame axiom `M(e_1)^{c_1}...M(e_m)^{c_m}
/// = u^{sum_{i<j} c_i c_j lambda_ij} M(c)`.
///
/// Negative powers are realized by accumulating the positive and negative
/// parts separately and performing one exact division at the end:
/// `M(c) = u^{Lambda(c_+, c_-)} M(c_+) M(c_-)^{-1}`.
pub fn ordered_product(
    ctx: &TorusContext,
    vars: &[TorusElement],
    frame_lambda: &IMat,
    c: &[i64],
) -> Result<TorusElement> {
    let m = vars.len();
    if c.len() != m || frame_lambda.rows() != m || frame_lambda.cols() != m {
        return Err(Error::ShapeMismatch);
    }
    let plus: Vec<i64> = c.iter().map(|&x| x.max(0)).collect();
    let minus: Vec<i64> = c.iter().map(|&x| (-x).max(0)).collect();
    let pos = frame_value_nonneg(ctx, vars, frame_lambda, &plus)?;
    if minus.iter().all(|&x| x == 0) {
        return Ok(pos);
    }
    let neg = frame_value_nonneg(ctx, vars, frame_lambda, &minus)?;
    let twist = frame_lambda.pair(&plus, &minus)?;
    let quot = TorusElement::exact_div(&pos, &neg, QuotientSide::Left)?;
    Ok(quot.scale_u(twist))
}

/// `M(c)` for componentwise nonnegative `c`: pure products, no division.
fn frame_value_nonneg(
    ctx: &TorusContext,
    vars: &[TorusElement],
    frame_lambda: &IMat,
    c: &[i64],
) -> Result<TorusElement> {
    let mut correction = 0i64;
    for i in 0..c.len() {
        for j in (i + 1)..c.len() {
            correction += c[i] * c[j] * frame_lambda[(i, j)];
        }
    }
    let mut acc = TorusElement::one(ctx);
    for (i, v) in vars.iter().enumerate() {
        if c[i] < 0 {
            return Err(Error::InvalidArg("frame_value_nonneg needs c >= 0".into()));
        }
        acc = acc.mul(&v.pow(c[i] as u32)?)?;
    }
    Ok(acc.scale_u(-correction))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::imat::IMat;

    fn kronecker_ctx() -> TorusContext {
        let lambda = IMat::from_rows(vec![vec![0, 1], vec![-1, 0]]).unwrap();
        TorusContext::new(lambda, ScalarRing::free()).unwrap()
    }

    fn mono(ctx: &TorusContext, e: &[i64]) -> TorusElement {
        TorusElement::basis_monomial(ctx, e).unwrap()
    }

    #[test]
    fn monomial_basics() {
        let ctx = kronecker_ctx();
        assert_eq!(mono(&ctx, &[0, 0]), TorusElement::one(&ctx));
        let x = mono(&ctx, &[3, -2]);
        let xinv = mono(&ctx, &[-3, 2]);
        assert_eq!(x.mul(&xinv).unwrap(), TorusElement::one(&ctx));
        assert!(TorusElement::basis_monomial(&ctx, &[1]).is_err());
    }

    #[test]
    fn twisted_product() {
        let ctx = kronecker_ctx();
        let x1 = mono(&ctx, &[1, 0]);
        let x2 = mono(&ctx, &[0, 1]);
        // X^{e1} X^{e2} = u X^{(1,1)}.
        let prod = x1.mul(&x2).unwrap();
        let expect = mono(&ctx, &[1, 1]).scale_u(1);
        assert_eq!(prod, expect);
        // X1 X2 = q X2 X1.
        let lhs = x1.mul(&x2).unwrap();
        let rhs = x2.mul(&x1).unwrap().scale_u(2);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn commutation_rule_random() {
        // X^e X^f = q^{Lambda(e,f)} X^f X^e over a rank-4 skew form.
        let lambda = IMat::from_rows(vec![
            vec![0, 0, -1, 0],
            vec![0, 0, 0, -1],
            vec![1, 0, 0, -1],
            vec![0, 1, 1, 0],
        ])
        .unwrap();
        let ctx = TorusContext::new(lambda.clone(), ScalarRing::free()).unwrap();
        let mut state = 0x12345678u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % 7) as i64 - 3
        };
        for _ in 0..30 {
            let e: Vec<i64> = (0..4).map(|_| next()).collect();
            let f: Vec<i64> = (0..4).map(|_| next()).collect();
            let xe = mono(&ctx, &e);
            let xf = mono(&ctx, &f);
            let lhs = xe.mul(&xf).unwrap();
            let rhs = xf
                .mul(&xe)
                .unwrap()
                .scale_u(2 * lambda.pair(&e, &f).unwrap());
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn associativity_random() {
        let ctx = kronecker_ctx();
        let mut state = 0xfeedface1234u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % 5) as i64 - 2
        };
        for _ in 0..20 {
            let mut rand_el = |ctx: &TorusContext| {
                let mut acc = TorusElement::zero(ctx);
                for _ in 0..3 {
                    let e: Vec<i64> = (0..2).map(|_| next()).collect();
                    let c = next();
                    let s = Scalar::from_int(ctx.ring(), c);
                    acc = acc
                        .add(&TorusElement::monomial(ctx, &e, s).unwrap())
                        .unwrap();
                }
                acc
            };
            let a = rand_el(&ctx);
            let b = rand_el(&ctx);
            let c = rand_el(&ctx);
            let lhs = a.mul(&b).unwrap().mul(&c).unwrap();
            let rhs = a.mul(&b.mul(&c).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn exact_division_spec_instance() {
        // b = u X^{(1,1)} + X^{(2,0)}, a = X^{(1,0)}; left quotient c with
        // c a = b is q X^{(0,1)} + X^{(1,0)}.
        let ctx = kronecker_ctx();
        let b = mono(&ctx, &[1, 1])
            .scale_u(1)
            .add(&mono(&ctx, &[2, 0]))
            .unwrap();
        let a = mono(&ctx, &[1, 0]);
        let c = TorusElement::exact_div(&b, &a, QuotientSide::Left).unwrap();
        let expect = mono(&ctx, &[0, 1])
            .scale_u(2)
            .add(&mono(&ctx, &[1, 0]))
            .unwrap();
        assert_eq!(c, expect);
        assert_eq!(c.mul(&a).unwrap(), b);
    }

    #[test]
    fn exact_division_round_trip() {
        let ctx = kronecker_ctx();
        let c = mono(&ctx, &[1, 0])
            .add(&mono(&ctx, &[-1, 2]).scale_u(3))
            .unwrap()
            .add(&mono(&ctx, &[0, -1]).scale_u(-2))
            .unwrap();
        let a = mono(&ctx, &[2, -1]).add(&mono(&ctx, &[0, 1])).unwrap();
        let b = c.mul(&a).unwrap();
        assert_eq!(
            TorusElement::exact_div(&b, &a, QuotientSide::Left).unwrap(),
            c
        );
        let b2 = a.mul(&c).unwrap();
        assert_eq!(
            TorusElement::exact_div(&b2, &a, QuotientSide::Right).unwrap(),
            c
        );
    }

    #[test]
    fn division_obstruction() {
        // Monomials are units, so the interesting failure needs a multi-term
        // divisor: X^{(1,0)} + 1 is not divisible by X^{(0,1)} + 1.
        let ctx = kronecker_ctx();
        let b = mono(&ctx, &[1, 0]).add(&TorusElement::one(&ctx)).unwrap();
        let a = mono(&ctx, &[0, 1]).add(&TorusElement::one(&ctx)).unwrap();
        assert!(matches!(
            TorusElement::exact_div(&b, &a, QuotientSide::Left),
            Err(Error::NotDivisible)
        ));
        // Dividing by a bare monomial always succeeds: monomials are units.
        let m = mono(&ctx, &[0, 1]);
        let q = TorusElement::exact_div(&b, &m, QuotientSide::Left).unwrap();
        assert_eq!(q.mul(&m).unwrap(), b);
    }

    #[test]
    fn ordered_product_monomial_frames() {
        let ctx = kronecker_ctx();
        let lambda = ctx.lambda().clone();
        let vars = vec![mono(&ctx, &[1, 0]), mono(&ctx, &[0, 1])];
        // M(c) = X^c for every |c| <= 3 when the frame is the initial one.
        for c1 in -3i64..=3 {
            for c2 in -3i64..=3 {
                let v = ordered_product(&ctx, &vars, &lambda, &[c1, c2]).unwrap();
                assert_eq!(v, mono(&ctx, &[c1, c2]), "c = ({c1},{c2})");
            }
        }
    }

    #[test]
    fn ordered_product_normalization() {
        // c = (1,1): u^{-1} X1 X2 = X^{(1,1)}.
        let ctx = kronecker_ctx();
        let lambda = ctx.lambda().clone();
        let vars = vec![mono(&ctx, &[1, 0]), mono(&ctx, &[0, 1])];
        let v = ordered_product(&ctx, &vars, &lambda, &[1, 1]).unwrap();
        assert_eq!(v, mono(&ctx, &[1, 1]));
        let w = ordered_product(&ctx, &vars, &lambda, &[-1, 0]).unwrap();
        assert_eq!(w, mono(&ctx, &[-1, 0]));
    }

    #[test]
    fn no_zero_terms_survive() {
        let ctx = kronecker_ctx();
        let a = mono(&ctx, &[1, 0]);
        let d = a.sub(&a).unwrap();
        assert!(d.is_zero());
        assert_eq!(d.num_terms(), 0);
    }

    #[test]
    fn json_round_trip() {
        let ctx = kronecker_ctx();
        let v = mono(&ctx, &[2, -1])
            .scale_u(-3)
            .add(&mono(&ctx, &[0, 1]))
            .unwrap();
        let j = v.to_json();
        let back = TorusElement::from_json(&j, &ScalarRing::free()).unwrap();
        assert_eq!(back, v);
        // Terms are emitted in the canonical graded-lex order.
        let exps: Vec<Vec<i64>> = j["terms"]
            .as_array()
            .unwrap()
            .iter()
            .map(|t| serde_json::from_value(t["exp"].clone()).unwrap())
            .collect();
        assert_eq!(exps, vec![vec![0, 1], vec![2, -1]]);
    }
}
