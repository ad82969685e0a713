//! The dual Ringel–Hall algebra on the delta-function basis, its twisted
//! `*` product, and the homomorphism `psi` into the quantum torus.
//!
//! The product of two delta functions is
//!
//! ```text
//! d_M * d_N = u^{Lambda(fm, fn) + 2d <m,n>} sum_E h^{MN}_E d_E,
//! h^{MN}_E = |Ext^1(M,N)_E| / |Hom(M,N)|,
//! ```
//!
//! with `f* = (Itilde - Rtilde^tr) *` and `<,>` the Euler form; the counting
//! factor `|Hom| = |k|^{[M,N]}` is `u^{2d [M,N]}`, so coefficients are
//! rationals times u-powers and stay exact.

use crate::caps::Caps;
use crate::cc::CCContext;
use crate::error::{Error, Result};
use crate::rep::{ext_middle_terms, hom_space, is_isomorphic, Representation};
use crate::scalar::Scalar;
use crate::torus::TorusElement;

/// A finite scalar combination of isomorphism classes of modules.
/// Representatives are pairwise non-isomorphic and no coefficient is zero.
#[derive(Debug, Clone)]
pub struct HallElement {
    ctx: CCContext,
    terms: Vec<(Representation, Scalar)>,
}

impl HallElement {
    pub fn zero(ctx: &CCContext) -> HallElement {
        HallElement {
            ctx: ctx.clone(),
            terms: Vec::new(),
        }
    }

    /// The delta function of one module class.
    pub fn delta(ctx: &CCContext, rep: Representation) -> Result<HallElement> {
        HallElement::zero(ctx).add_term(rep, Scalar::one(ctx.ring()))
    }

    pub fn context(&self) -> &CCContext {
        &self.ctx
    }

    pub fn terms(&self) -> &[(Representation, Scalar)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn caps(&self) -> &Caps {
        self.ctx.caps()
    }

    /// Adds `c * d_[rep]`, merging with an isomorphic representative when one
    /// is already present.
    pub fn add_term(mut self, rep: Representation, c: Scalar) -> Result<HallElement> {
        if c.is_zero() {
            return Ok(self);
        }
        let caps = *self.caps();
        for (known, coeff) in self.terms.iter_mut() {
            if is_isomorphic(known, &rep, &caps, caps.rng_seed)? {
                *coeff = coeff.add(&c)?;
                if coeff.is_zero() {
                    let rep_ptr = known as *const _;
                    self.terms.retain(|(r, _)| r as *const _ != rep_ptr);
                }
                return Ok(self);
            }
        }
        self.terms.push((rep, c));
        Ok(self)
    }

    pub fn add(&self, other: &HallElement) -> Result<HallElement> {
        let mut acc = self.clone();
        for (rep, c) in &other.terms {
            acc = acc.add_term(rep.clone(), c.clone())?;
        }
        Ok(acc)
    }

    pub fn scale(&self, s: &Scalar) -> Result<HallElement> {
        let mut out = HallElement::zero(&self.ctx);
        for (rep, c) in &self.terms {
            out = out.add_term(rep.clone(), c.mul(s)?)?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &HallElement) -> Result<HallElement> {
        self.add(&other.scale(&Scalar::from_int(self.ctx.ring(), -1))?)
    }

    /// Structural equality up to isomorphism of representatives.
    pub fn equals(&self, other: &HallElement) -> Result<bool> {
        Ok(self.sub(other)?.is_zero())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!(self
            .terms
            .iter()
            .map(|(rep, c)| serde_json::json!({
                "rep": rep.to_json(),
                "coeff": c.to_json(),
            }))
            .collect::<Vec<_>>())
    }
}

/// The twisted dual Hall product, bilinear extension of the delta-function
/// rule. Every term of `d_M * d_N` sits in degree `dim M + dim N`.
pub fn hall_star(x: &HallElement, y: &HallElement) -> Result<HallElement> {
    if x.ctx.torus() != y.ctx.torus() {
        return Err(Error::ContextMismatch);
    }
    let ctx = &x.ctx;
    let ring = ctx.ring();
    let mut acc = HallElement::zero(ctx);
    for (m, cm) in &x.terms {
        for (n, cn) in &y.terms {
            let mv = m.dim_vector();
            let nv = n.dim_vector();
            let nprin = ctx.quiver().principal();
            let fm = ctx.matrices().i_minus_rtr.apply(&mv[..nprin])?;
            let fn_ = ctx.matrices().i_minus_rtr.apply(&nv[..nprin])?;
            let lam = ctx.lambda().pair(&fm, &fn_)?;
            let euler = ctx.quiver().euler(&mv, &nv)?;
            let prefactor = Scalar::u_power(ring, lam + 2 * ctx.d() * euler);
            let hom = hom_space(m, n)?;
            let table = ext_middle_terms(m, n, ctx.caps())?;
            let hom_count = ctx.counting_power(hom.hom_dim as i64);
            for (e, eps) in table.entries {
                let h = Scalar::from_u128(ring, eps).div_exact(&hom_count)?;
                let coeff = cm.mul(cn)?.mul(&prefactor)?.mul(&h)?;
                acc = acc.add_term(e, coeff)?;
            }
        }
    }
    Ok(acc)
}

/// The algebra homomorphism into the quantum torus: linear extension of
/// `d_V -> X_V`.
pub fn psi(x: &HallElement) -> Result<TorusElement> {
    let mut acc = TorusElement::zero(x.ctx.torus());
    for (rep, c) in &x.terms {
        acc = acc.add(&x.ctx.character(rep)?.scale(c)?)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FiniteField;
    use crate::quiver::standard;
    use crate::rep::{kronecker, p1_points};

    fn ctx_f4() -> CCContext {
        let q = standard::kronecker();
        let f = FiniteField::new(2, 2).unwrap();
        CCContext::new(&q, &f, &Caps::default()).unwrap()
    }

    #[test]
    fn delta_zero_is_identity() {
        let ctx = ctx_f4();
        let z = Representation::zero(ctx.quiver(), ctx.field());
        let one = HallElement::delta(&ctx, z).unwrap();
        let m2 = kronecker::preprojective(ctx.quiver(), ctx.field(), 2).unwrap();
        let dm = HallElement::delta(&ctx, m2).unwrap();
        let left = hall_star(&one, &dm).unwrap();
        let right = hall_star(&dm, &one).unwrap();
        assert!(left.equals(&dm).unwrap());
        assert!(right.equals(&dm).unwrap());
    }

    #[test]
    fn product_respects_dimension_grading() {
        let ctx = ctx_f4();
        let m1 = kronecker::preprojective(ctx.quiver(), ctx.field(), 1).unwrap();
        let n1 = kronecker::preinjective(ctx.quiver(), ctx.field(), 1).unwrap();
        let prod = hall_star(
            &HallElement::delta(&ctx, m1).unwrap(),
            &HallElement::delta(&ctx, n1).unwrap(),
        )
        .unwrap();
        assert!(!prod.is_zero());
        for (rep, _) in prod.terms() {
            assert_eq!(rep.dim_vector(), vec![1, 1]);
        }
    }

    #[test]
    fn simple_product_coefficients_frozen() {
        // d_{S1} * d_{S2} over F4: prefactor u^{1 + 2*2*(-2)} = u^{-7};
        // h = eps since Hom(S1, S2) = 0; eps is 1 on the split class and
        // |k|-1 = 3 on each of the five regular points.
        let ctx = ctx_f4();
        let ring = ctx.ring();
        let s1 = Representation::simple(ctx.quiver(), ctx.field(), 1).unwrap();
        let s2 = Representation::simple(ctx.quiver(), ctx.field(), 2).unwrap();
        let prod = hall_star(
            &HallElement::delta(&ctx, s1.clone()).unwrap(),
            &HallElement::delta(&ctx, s2.clone()).unwrap(),
        )
        .unwrap();
        assert_eq!(prod.terms().len(), 6);
        let split = s2.direct_sum(&s1).unwrap();
        let u7 = Scalar::u_power(ring, -7);
        let mut seen_split = false;
        let mut regulars = 0;
        for (rep, c) in prod.terms() {
            if is_isomorphic(rep, &split, ctx.caps(), None).unwrap() {
                assert_eq!(c, &u7);
                seen_split = true;
            } else {
                assert_eq!(rep.dim_vector(), vec![1, 1]);
                let expect = u7.mul(&Scalar::from_int(ring, 3)).unwrap();
                assert_eq!(c, &expect);
                regulars += 1;
            }
        }
        assert!(seen_split);
        assert_eq!(regulars, 5);
        assert_eq!(p1_points(ctx.field()).len(), 5);
    }

    #[test]
    fn psi_of_delta_is_the_character() {
        let ctx = ctx_f4();
        let m1 = kronecker::preprojective(ctx.quiver(), ctx.field(), 1).unwrap();
        let d = HallElement::delta(&ctx, m1.clone()).unwrap();
        assert_eq!(psi(&d).unwrap(), ctx.character(&m1).unwrap());
        let z = Representation::zero(ctx.quiver(), ctx.field());
        let one = HallElement::delta(&ctx, z).unwrap();
        assert_eq!(psi(&one).unwrap(), TorusElement::one(ctx.torus()));
    }

    #[test]
    fn psi_is_multiplicative_on_simples() {
        let ctx = ctx_f4();
        let s1 = Representation::simple(ctx.quiver(), ctx.field(), 1).unwrap();
        let s2 = Representation::simple(ctx.quiver(), ctx.field(), 2).unwrap();
        let d1 = HallElement::delta(&ctx, s1.clone()).unwrap();
        let d2 = HallElement::delta(&ctx, s2.clone()).unwrap();
        let lhs = psi(&hall_star(&d1, &d2).unwrap()).unwrap();
        let rhs = psi(&d1).unwrap().mul(&psi(&d2).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn well_defined_under_iso_replacement() {
        let ctx = ctx_f4();
        let n2 = kronecker::preinjective(ctx.quiver(), ctx.field(), 2).unwrap();
        let mut rng = crate::rng::SplitMix64::new(5);
        let n2_twisted = n2.base_change(&mut rng);
        let s2 = Representation::simple(ctx.quiver(), ctx.field(), 2).unwrap();
        let a = hall_star(
            &HallElement::delta(&ctx, n2).unwrap(),
            &HallElement::delta(&ctx, s2.clone()).unwrap(),
        )
        .unwrap();
        let b = hall_star(
            &HallElement::delta(&ctx, n2_twisted).unwrap(),
            &HallElement::delta(&ctx, s2).unwrap(),
        )
        .unwrap();
        assert!(a.equals(&b).unwrap());
    }
}
