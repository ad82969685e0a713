//! The quantum Caldero–Chapoton map: torus-valued characters of modules and
//! of shifted-injective objects `M + I[-1]`.
//!
//! With `d` the common diagonal of the compatible pair and `u^{2d}` the field
//! cardinality, the character of a module `M` with dimension vector `m` is
//!
//! ```text
//! X_M = sum_e |Gr_e(M)| u^{-d <e, m-e>} X^{-Btilde e - (Itilde - Rtilde^tr) m}
//! ```
//!
//! and the shifted rule adds `dim soc I` to the exponent and subtracts
//! `dim I` inside the Euler twist. Counting exponents scale with `d` so that
//! the same formulas cover both conventions the theory runs under: `d = 1`
//! seeds count over a field of size `q`, the rank-2 double-arrow seed
//! (`d = 2`) over a field of size `q^2`.

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::field::FiniteField;
use crate::imat::IMat;
use crate::quiver::{compatibility_d, find_lambda, Quiver, SeedMatrices};
use crate::rep::{gr_count, is_injective_module, Representation};
use crate::scalar::{Scalar, ScalarRing};
use crate::torus::{TorusContext, TorusElement};
use std::sync::Arc;

#[derive(Debug)]
struct CCInner {
    quiver: Arc<Quiver>,
    field: FiniteField,
    mats: SeedMatrices,
    lambda: IMat,
    d: i64,
    torus: TorusContext,
    caps: Caps,
}

/// Everything a character computation needs: the seed matrices, the
/// compatible skew form, the field, and the coefficient ring (related mode
/// with `u^{2d} = |k|` unless overridden).
#[derive(Debug, Clone)]
pub struct CCContext {
    inner: Arc<CCInner>,
}

impl CCContext {
    /// Builds the context with the related coefficient ring `u^{2d} = |k|`.
    pub fn new(quiver: &Arc<Quiver>, field: &FiniteField, caps: &Caps) -> Result<CCContext> {
        let d = seed_scale(quiver)?;
        let ring = ScalarRing::related(2 * d as u32, field.cardinality())?;
        Self::with_ring(quiver, field, &ring, caps)
    }

    /// Same context over an explicit ring (the free ring keeps counts as
    /// integer coefficients).
    pub fn with_ring(
        quiver: &Arc<Quiver>,
        field: &FiniteField,
        ring: &ScalarRing,
        caps: &Caps,
    ) -> Result<CCContext> {
        let mats = SeedMatrices::of(quiver);
        let (lambda, dvec) = find_lambda(&mats.btilde)?;
        let d = scalar_d(&dvec)?;
        let torus = TorusContext::new(lambda.clone(), ring.clone())?;
        Ok(CCContext {
            inner: Arc::new(CCInner {
                quiver: quiver.clone(),
                field: field.clone(),
                mats,
                lambda,
                d,
                torus,
                caps: *caps,
            }),
        })
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.inner.quiver
    }

    pub fn field(&self) -> &FiniteField {
        &self.inner.field
    }

    pub fn torus(&self) -> &TorusContext {
        &self.inner.torus
    }

    pub fn lambda(&self) -> &IMat {
        &self.inner.lambda
    }

    pub fn matrices(&self) -> &SeedMatrices {
        &self.inner.mats
    }

    pub fn d(&self) -> i64 {
        self.inner.d
    }

    pub fn caps(&self) -> &Caps {
        &self.inner.caps
    }

    pub fn ring(&self) -> &ScalarRing {
        self.inner.torus.ring()
    }

    fn check_module(&self, m: &Representation) -> Result<()> {
        if m.quiver() != &self.inner.quiver || m.field() != &self.inner.field {
            return Err(Error::InvalidArg(
                "module belongs to a different quiver or field".into(),
            ));
        }
        Ok(())
    }

    /// `u^{2d k}`, i.e. `|k|^k` as an element of the coefficient ring.
    pub fn counting_power(&self, k: i64) -> Scalar {
        Scalar::u_power(self.ring(), 2 * self.inner.d * k)
    }

    /// The character of a module supported on the principal part.
    pub fn character(&self, m: &Representation) -> Result<TorusElement> {
        self.check_module(m)?;
        if !m.is_principal_supported() {
            return Err(Error::InvalidArg(
                "characters of modules need principal support".into(),
            ));
        }
        self.character_shifted(
            m,
            &Representation::zero(&self.inner.quiver, &self.inner.field),
        )
    }

    /// The character of `M + I[-1]` for an injective `I`. With `M = 0` this
    /// is the monomial `X^{dim soc I}`; with `I = 0` it reduces to the plain
    /// module rule.
    pub fn character_shifted(
        &self,
        m: &Representation,
        i: &Representation,
    ) -> Result<TorusElement> {
        self.check_module(m)?;
        self.check_module(i)?;
        if !m.is_principal_supported() {
            return Err(Error::InvalidArg(
                "characters of modules need principal support".into(),
            ));
        }
        if !i.is_zero() && !is_injective_module(i, &self.inner.caps)? {
            return Err(Error::NotInjective);
        }
        let inner = &self.inner;
        let n = inner.quiver.principal();
        let mv = m.dim_vector();
        let m_prin: Vec<i64> = mv[..n].to_vec();
        let i_full = i.dim_vector();
        let soc = if i.is_zero() {
            vec![0i64; inner.quiver.vertices()]
        } else {
            i.soc_dims()
        };
        // Base exponent -(Itilde - Rtilde^tr) m + dim soc I.
        let base: Vec<i64> = inner
            .mats
            .i_minus_rtr
            .apply(&m_prin)?
            .iter()
            .zip(&soc)
            .map(|(x, s)| -x + s)
            .collect();
        let mut acc = TorusElement::zero(&inner.torus);
        // e ranges over the full box 0 <= e <= m; zero counts are skipped
        // after counting, not before.
        let mut e = vec![0i64; n];
        loop {
            let e_full = {
                let mut v = e.clone();
                v.resize(inner.quiver.vertices(), 0);
                v
            };
            let count = gr_count(m, &e_full, &inner.caps)?;
            if count != 0 {
                // Twist <e, m - e - i> over the full quiver.
                let rest: Vec<i64> = (0..inner.quiver.vertices())
                    .map(|v| {
                        let mval = if v < n { m_prin[v] } else { 0 };
                        mval - e_full[v] - i_full[v]
                    })
                    .collect();
                let twist = inner.quiver.euler(&e_full, &rest)?;
                let coeff = Scalar::from_u128(self.ring(), count)
                    .mul(&Scalar::u_power(self.ring(), -inner.d * twist))?;
                let be = inner.mats.btilde.apply(&e)?;
                let expo: Vec<i64> = base.iter().zip(&be).map(|(b, x)| b - x).collect();
                acc = acc.add(&TorusElement::monomial(&inner.torus, &expo, coeff)?)?;
            }
            // Next point of the box.
            let mut v = 0;
            loop {
                if v == n {
                    return Ok(acc);
                }
                e[v] += 1;
                if e[v] <= m_prin[v] {
                    break;
                }
                e[v] = 0;
                v += 1;
            }
        }
    }
}

/// The common diagonal entry of `D`; seeds with non-scalar `D` have no single
/// counting convention and are rejected.
fn scalar_d(dvec: &[i64]) -> Result<i64> {
    let d = *dvec
        .first()
        .ok_or_else(|| Error::InvalidArg("empty diagonal in compatible pair".into()))?;
    if dvec.iter().any(|&x| x != d) {
        return Err(Error::InvalidArg(
            "seeds with non-scalar D are not supported by the character map".into(),
        ));
    }
    Ok(d)
}

/// Computes the `d` of a quiver's canonical compatible pair.
pub fn seed_scale(quiver: &Arc<Quiver>) -> Result<i64> {
    let mats = SeedMatrices::of(quiver);
    let (lambda, dvec) = find_lambda(&mats.btilde)?;
    debug_assert!(
        compatibility_d(&mats.btilde.transpose().mul(&lambda)?, quiver.principal()).is_some()
    );
    scalar_d(&dvec)
}
