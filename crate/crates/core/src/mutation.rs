//! Quantum seed mutation: matrix and skew-form mutation, the two-term
//! exchange step, the binomial frame expansion, and transport of expressions
//! between seeds by denominator clearing.
//!
//! Every cluster variable is kept as an explicit element of the ambient
//! initial torus; frames after the first mutation are never symbolic. The
//! mutated skew form is `E^T Lambda E`, which is what makes the mutated frame
//! a toric frame again; compatibility with the same `D` is asserted after
//! every step.

use crate::error::{Error, Result};
use crate::imat::IMat;
use crate::quiver::{compatibility_d, find_lambda, Quiver, SeedMatrices};
use crate::scalar::{qbinom, Scalar, ScalarRing};
use crate::torus::{ordered_product, QuotientSide, TorusContext, TorusElement};

/// The data one mutation step is built from.
#[derive(Debug, Clone)]
pub struct MutationStep {
    /// 1-based direction, at most the principal rank.
    pub k: usize,
    /// The m x m matrix `E` of the step.
    pub e_mat: IMat,
    /// The k-th column of `Btilde`.
    pub b_col: Vec<i64>,
    /// The diagonal entry `d_k`.
    pub d_k: i64,
}

/// Mutates `(Btilde, Lambda)` in direction `k` (1-based). Returns the new
/// pair together with the `E` matrix used.
pub fn matrix_mutate(btilde: &IMat, lambda: &IMat, k: usize) -> Result<(IMat, IMat, IMat)> {
    let m = btilde.rows();
    let n = btilde.cols();
    if k == 0 || k > n {
        return Err(Error::VertexOutOfRange(k));
    }
    let kk = k - 1;
    let mut e = IMat::identity(m);
    e[(kk, kk)] = -1;
    for i in 0..m {
        if i != kk {
            e[(i, kk)] = (-btilde[(i, kk)]).max(0);
        }
    }
    let mut bt = IMat::zeros(m, n);
    for i in 0..m {
        for j in 0..n {
            bt[(i, j)] = if i == kk || j == kk {
                -btilde[(i, j)]
            } else {
                let b_ik = btilde[(i, kk)];
                let b_kj = btilde[(kk, j)];
                btilde[(i, j)] + b_ik.signum() * (b_ik * b_kj).max(0)
            };
        }
    }
    let lam = e.transpose().mul(lambda)?.mul(&e)?;
    Ok((bt, lam, e))
}

/// A quantum seed: compatible pair, diagonal, and the current cluster as
/// elements of the ambient initial torus.
#[derive(Debug, Clone)]
pub struct QuantumSeed {
    btilde: IMat,
    /// Frame skew form of the current cluster (mutates with the seed).
    lambda: IMat,
    dvec: Vec<i64>,
    cluster: Vec<TorusElement>,
    ctx: TorusContext,
}

impl QuantumSeed {
    /// The initial seed of a quiver: cluster of basis monomials, skew form
    /// from [`find_lambda`].
    pub fn initial(quiver: &Quiver, ring: &ScalarRing) -> Result<QuantumSeed> {
        let mats = SeedMatrices::of(quiver);
        Self::from_pair(&mats.btilde, ring)
    }

    /// An initial seed from an explicit exchange matrix.
    pub fn from_pair(btilde: &IMat, ring: &ScalarRing) -> Result<QuantumSeed> {
        let (lambda, dvec) = find_lambda(btilde)?;
        let ctx = TorusContext::new(lambda.clone(), ring.clone())?;
        let m = btilde.rows();
        let cluster = (0..m)
            .map(|i| {
                let mut e = vec![0i64; m];
                e[i] = 1;
                TorusElement::basis_monomial(&ctx, &e)
            })
            .collect::<Result<_>>()?;
        Ok(QuantumSeed {
            btilde: btilde.clone(),
            lambda,
            dvec,
            cluster,
            ctx,
        })
    }

    pub fn rank(&self) -> usize {
        self.btilde.rows()
    }

    pub fn principal_rank(&self) -> usize {
        self.btilde.cols()
    }

    pub fn btilde(&self) -> &IMat {
        &self.btilde
    }

    pub fn lambda(&self) -> &IMat {
        &self.lambda
    }

    pub fn dvec(&self) -> &[i64] {
        &self.dvec
    }

    pub fn cluster(&self) -> &[TorusElement] {
        &self.cluster
    }

    pub fn variable(&self, i: usize) -> &TorusElement {
        &self.cluster[i - 1]
    }

    pub fn context(&self) -> &TorusContext {
        &self.ctx
    }

    /// The mutation data at direction `k`.
    pub fn step(&self, k: usize) -> Result<MutationStep> {
        let n = self.principal_rank();
        if k == 0 || k > n {
            return Err(Error::VertexOutOfRange(k));
        }
        let m = self.rank();
        let mut e = IMat::identity(m);
        e[(k - 1, k - 1)] = -1;
        for i in 0..m {
            if i != k - 1 {
                e[(i, k - 1)] = (-self.btilde[(i, k - 1)]).max(0);
            }
        }
        Ok(MutationStep {
            k,
            e_mat: e,
            b_col: self.btilde.column(k - 1),
            d_k: self.dvec[k - 1],
        })
    }

    /// The frame value `M(c)` of the current cluster.
    pub fn frame_value(&self, c: &[i64]) -> Result<TorusElement> {
        ordered_product(&self.ctx, &self.cluster, &self.lambda, c)
    }

    /// One mutation step. The exchange binomial
    /// `X'_k = M(sum_i [b_ik]+ e_i - e_k) + M(sum_j [-b_jk]+ e_j - e_k)`
    /// replaces the k-th variable; matrices mutate alongside.
    ///
    /// The two frame arguments share the denominator `V_k`, and only their
    /// sum is Laurent once the cluster variables are polynomials, so the
    /// exchange value goes through the same denominator-clearing evaluation
    /// as [`transport`]. A division failure there would falsify the Laurent
    /// phenomenon and is fatal.
    pub fn mutate(&self, k: usize) -> Result<QuantumSeed> {
        let n = self.principal_rank();
        if k == 0 || k > n {
            return Err(Error::VertexOutOfRange(k));
        }
        let m = self.rank();
        let kk = k - 1;
        let mut c_plus = vec![0i64; m];
        let mut c_minus = vec![0i64; m];
        for i in 0..m {
            let b = self.btilde[(i, kk)];
            c_plus[i] = b.max(0);
            c_minus[i] = (-b).max(0);
        }
        c_plus[kk] -= 1;
        c_minus[kk] -= 1;
        let one = Scalar::one(self.ctx.ring());
        let new_var = transport(
            &self.cluster,
            &self.lambda,
            &[(c_plus, one.clone()), (c_minus, one)],
        )?;
        let (btilde, lambda, _e) = matrix_mutate(&self.btilde, &self.lambda, k)?;
        // Compatibility is preserved with the same D.
        let check = btilde.transpose().mul(&lambda)?;
        match compatibility_d(&check, n) {
            Some(d) if d == self.dvec => {}
            _ => {
                return Err(Error::NoCompatiblePair(
                    "mutation failed to preserve compatibility".into(),
                ))
            }
        }
        let mut cluster = self.cluster.clone();
        cluster[kk] = new_var;
        Ok(QuantumSeed {
            btilde,
            lambda,
            dvec: self.dvec.clone(),
            cluster,
            ctx: self.ctx.clone(),
        })
    }

    /// Applies a comma-form mutation sequence left to right.
    pub fn mutate_seq(&self, seq: &[usize]) -> Result<QuantumSeed> {
        let mut seed = self.clone();
        for &k in seq {
            seed = seed.mutate(k)?;
        }
        Ok(seed)
    }

    /// The binomial expansion of the mutated frame in the current one:
    /// `M'(c) = sum_{p=0}^{c_k} [c_k p]_{q^{d_k/2}} M(E c + p b^k)`, for
    /// `c_k >= 0`. At `c = e_k` this is exactly the exchange binomial. All
    /// summands share the denominator `V_k^{c_k}`, so the whole sum is
    /// evaluated with one denominator clearing.
    pub fn frame_expand(&self, c: &[i64], k: usize) -> Result<TorusElement> {
        let step = self.step(k)?;
        if c.len() != self.rank() {
            return Err(Error::ShapeMismatch);
        }
        let ck = c[k - 1];
        if ck < 0 {
            return Err(Error::InvalidArg(
                "frame expansion needs a nonnegative mutation coordinate".into(),
            ));
        }
        let ec = step.e_mat.apply(c)?;
        let mut expr = Vec::with_capacity(ck as usize + 1);
        for p in 0..=ck {
            let coeff = qbinom(ck as u32, p as u32, step.d_k as u32, self.ctx.ring())?;
            let arg: Vec<i64> = ec.iter().zip(&step.b_col).map(|(x, b)| x + p * b).collect();
            expr.push((arg, coeff));
        }
        transport(&self.cluster, &self.lambda, &expr)
    }

    /// Checks the seed invariants: pairwise frame commutation
    /// `V_i V_j = q^{lambda_ij} V_j V_i` and `Btilde^T Lambda = (D|0)`.
    pub fn validate(&self) -> Result<()> {
        let check = self.btilde.transpose().mul(&self.lambda)?;
        match compatibility_d(&check, self.principal_rank()) {
            Some(d) if d == self.dvec => {}
            _ => {
                return Err(Error::NoCompatiblePair(
                    "seed fails Btilde^T Lambda = (D|0)".into(),
                ))
            }
        }
        let m = self.rank();
        for i in 0..m {
            for j in (i + 1)..m {
                let lhs = self.cluster[i].mul(&self.cluster[j])?;
                let rhs = self.cluster[j]
                    .mul(&self.cluster[i])?
                    .scale_u(2 * self.lambda[(i, j)]);
                if lhs != rhs {
                    return Err(Error::InvalidArg(format!(
                        "cluster variables {i} and {j} fail frame commutation"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "Btilde": self.btilde.to_json(),
            "Lambda": self.lambda.to_json(),
            "D": self.dvec,
            "cluster": self.cluster.iter().map(|v| v.to_json()).collect::<Vec<_>>(),
        })
    }
}

/// Evaluates an expression given in coordinates over a mutated seed back in
/// the ambient torus, by denominator clearing: with
/// `N_i = max(0, -min_c c_i)`,
///
/// ```text
/// S = sum_c s_c u^{Lambda'(c, N)} M'(c + N),   T M'(N) = S,
/// ```
///
/// and `T` is the transported value, exact whenever the expression is Laurent
/// in the mutated cluster.
pub fn transport(
    vars: &[TorusElement],
    frame_lambda: &IMat,
    expr: &[(Vec<i64>, Scalar)],
) -> Result<TorusElement> {
    if vars.is_empty() {
        return Err(Error::InvalidArg("transport needs a nonempty frame".into()));
    }
    let ctx = vars[0].context().clone();
    let m = vars.len();
    let mut shift = vec![0i64; m];
    for (c, _) in expr {
        if c.len() != m {
            return Err(Error::ShapeMismatch);
        }
        for i in 0..m {
            shift[i] = shift[i].max(-c[i]);
        }
    }
    let mut s = TorusElement::zero(&ctx);
    for (c, coeff) in expr {
        let twist = frame_lambda.pair(c, &shift)?;
        let arg: Vec<i64> = c.iter().zip(&shift).map(|(a, b)| a + b).collect();
        let val = ordered_product(&ctx, vars, frame_lambda, &arg)?;
        s = s.add(&val.scale(coeff)?.scale_u(twist))?;
    }
    if shift.iter().all(|&x| x == 0) {
        return Ok(s);
    }
    let denom = ordered_product(&ctx, vars, frame_lambda, &shift)?;
    TorusElement::exact_div(&s, &denom, QuotientSide::Left)
}

/// Transport driven by a torus element over the mutated context: its terms
/// are read as frame coordinates.
pub fn transport_element(
    vars: &[TorusElement],
    frame_lambda: &IMat,
    expr: &TorusElement,
) -> Result<TorusElement> {
    let terms: Vec<(Vec<i64>, Scalar)> =
        expr.terms().map(|(e, s)| (e.to_vec(), s.clone())).collect();
    let terms: Vec<(Vec<i64>, Scalar)> = terms
        .into_iter()
        .map(|(e, s)| {
            let reduced = s.reduce_to(vars[0].context().ring())?;
            Ok((e, reduced))
        })
        .collect::<Result<_>>()?;
    transport(vars, frame_lambda, &terms)
}
