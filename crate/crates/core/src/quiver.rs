//! Acyclic quivers with a principal part, the derived exchange data
//! (`Btilde`, `Rtilde`, `Rtilde^tr`, Euler forms), compatible skew forms, and
//! sink/source reflections.

use crate::error::{Error, Result};
use crate::imat::{clear_denominators, solve_rational, IMat};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::sync::Arc;

/// An acyclic quiver on vertices `1..=m` (stored 0-based) whose first `n`
/// vertices form the principal part; vertices `n+1..=m` are frozen.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    m: usize,
    n: usize,
    /// Arrows as (source, target), 0-based.
    arrows: Vec<(usize, usize)>,
}

impl Quiver {
    /// Builds a quiver from 1-based arrow pairs and validates acyclicity.
    pub fn new(m: usize, n: usize, arrows_one_based: &[(usize, usize)]) -> Result<Arc<Quiver>> {
        if n == 0 || n > m {
            return Err(Error::InvalidArg(format!(
                "need 1 <= n <= m, got n={n}, m={m}"
            )));
        }
        let mut arrows = Vec::with_capacity(arrows_one_based.len());
        for &(s, t) in arrows_one_based {
            if s == 0 || s > m {
                return Err(Error::VertexOutOfRange(s));
            }
            if t == 0 || t > m {
                return Err(Error::VertexOutOfRange(t));
            }
            if s == t {
                return Err(Error::CycleDetected);
            }
            arrows.push((s - 1, t - 1));
        }
        let q = Quiver { m, n, arrows };
        if !q.is_acyclic() {
            return Err(Error::CycleDetected);
        }
        Ok(Arc::new(q))
    }

    fn is_acyclic(&self) -> bool {
        // Kahn topological sort.
        let mut indeg = vec![0usize; self.m];
        for &(_, t) in &self.arrows {
            indeg[t] += 1;
        }
        let mut stack: Vec<usize> = (0..self.m).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for &(s, t) in &self.arrows {
                if s == v {
                    indeg[t] -= 1;
                    if indeg[t] == 0 {
                        stack.push(t);
                    }
                }
            }
        }
        seen == self.m
    }

    pub fn vertices(&self) -> usize {
        self.m
    }

    pub fn principal(&self) -> usize {
        self.n
    }

    /// Arrows as 0-based (source, target) pairs, in declaration order.
    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn arrow_count(&self, s: usize, t: usize) -> usize {
        self.arrows
            .iter()
            .filter(|&&(a, b)| a == s && b == t)
            .count()
    }

    /// Sink in the full quiver: no outgoing arrows (0-based vertex).
    pub fn is_sink(&self, v: usize) -> bool {
        self.arrows.iter().all(|&(s, _)| s != v)
    }

    pub fn is_source(&self, v: usize) -> bool {
        self.arrows.iter().all(|&(_, t)| t != v)
    }

    /// Every principal vertex is a sink or a source of the principal part.
    pub fn is_bipartite(&self) -> bool {
        (0..self.n).all(|v| {
            let out = self.arrows.iter().any(|&(s, t)| s == v && t < self.n);
            let into = self.arrows.iter().any(|&(s, t)| t == v && s < self.n);
            !(out && into)
        })
    }

    /// Reverses all arrows incident to the principal vertex `i` (1-based),
    /// which must be a sink or a source of the principal part.
    pub fn reflect(&self, i_one_based: usize) -> Result<Arc<Quiver>> {
        if i_one_based == 0 || i_one_based > self.n {
            return Err(Error::VertexOutOfRange(i_one_based));
        }
        let i = i_one_based - 1;
        let principal_out = self.arrows.iter().any(|&(s, t)| s == i && t < self.n);
        let principal_in = self.arrows.iter().any(|&(s, t)| t == i && s < self.n);
        if principal_out && principal_in {
            return Err(Error::NotSinkOrSource(i_one_based));
        }
        let arrows: Vec<(usize, usize)> = self
            .arrows
            .iter()
            .map(|&(s, t)| if s == i || t == i { (t, s) } else { (s, t) })
            .collect();
        let q = Quiver {
            m: self.m,
            n: self.n,
            arrows,
        };
        if !q.is_acyclic() {
            return Err(Error::CycleDetected);
        }
        Ok(Arc::new(q))
    }

    /// Extends a coefficient-free quiver by one frozen vertex per principal
    /// vertex with a single arrow `(n+i) -> i`, so `Btilde = [B; I]`.
    pub fn principal_framing(&self) -> Result<Arc<Quiver>> {
        if self.m != self.n {
            return Err(Error::InvalidArg(
                "principal framing needs a coefficient-free quiver (m = n)".into(),
            ));
        }
        let n = self.n;
        let mut arrows: Vec<(usize, usize)> = self.arrows.clone();
        for i in 0..n {
            arrows.push((n + i, i));
        }
        Ok(Arc::new(Quiver {
            m: 2 * n,
            n,
            arrows,
        }))
    }

    pub fn opposite(&self) -> Arc<Quiver> {
        Arc::new(Quiver {
            m: self.m,
            n: self.n,
            arrows: self.arrows.iter().map(|&(s, t)| (t, s)).collect(),
        })
    }

    /// Euler form `<a,b> = sum_i a_i b_i - sum_{arrows i->j} a_i b_j` on the
    /// full vertex set.
    pub fn euler(&self, a: &[i64], b: &[i64]) -> Result<i64> {
        if a.len() != self.m || b.len() != self.m {
            return Err(Error::ShapeMismatch);
        }
        let mut acc: i64 = (0..self.m).map(|i| a[i] * b[i]).sum();
        for &(s, t) in &self.arrows {
            acc -= a[s] * b[t];
        }
        Ok(acc)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "vertices": self.m,
            "principal": self.n,
            "arrows": self
                .arrows
                .iter()
                .map(|&(s, t)| vec![s + 1, t + 1])
                .collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Arc<Quiver>> {
        let m = v
            .get("vertices")
            .and_then(|x| x.as_u64())
            .ok_or_else(|| Error::Json("quiver needs `vertices`".into()))? as usize;
        let n = v
            .get("principal")
            .and_then(|x| x.as_u64())
            .ok_or_else(|| Error::Json("quiver needs `principal`".into()))?
            as usize;
        let arrows: Vec<(usize, usize)> = v
            .get("arrows")
            .and_then(|x| x.as_array())
            .ok_or_else(|| Error::Json("quiver needs `arrows`".into()))?
            .iter()
            .map(|p| {
                let pair: Vec<usize> =
                    serde_json::from_value(p.clone()).map_err(|e| Error::Json(e.to_string()))?;
                if pair.len() != 2 {
                    return Err(Error::Json("arrow must be a pair".into()));
                }
                Ok((pair[0], pair[1]))
            })
            .collect::<Result<_>>()?;
        Quiver::new(m, n, &arrows)
    }
}

/// The matrices the theory derives from a quiver. All are m x n except the
/// Euler form.
#[derive(Debug, Clone)]
pub struct SeedMatrices {
    /// `b_ij = #(i -> j) - #(j -> i)`.
    pub btilde: IMat,
    /// `r_ij = #(j -> i)`.
    pub rtilde: IMat,
    /// The `Rtilde` of the opposite quiver: `r^tr_ij = #(i -> j)`.
    pub rtilde_tr: IMat,
    /// Left m x n block of the identity.
    pub itilde: IMat,
    /// `Itilde - Rtilde^tr`, the matrix the character and Hall formulas use.
    pub i_minus_rtr: IMat,
}

impl SeedMatrices {
    pub fn of(q: &Quiver) -> SeedMatrices {
        let (m, n) = (q.vertices(), q.principal());
        let mut btilde = IMat::zeros(m, n);
        let mut rtilde = IMat::zeros(m, n);
        let mut rtilde_tr = IMat::zeros(m, n);
        let mut itilde = IMat::zeros(m, n);
        for i in 0..m {
            for j in 0..n {
                let fwd = q.arrow_count(i, j) as i64;
                let back = q.arrow_count(j, i) as i64;
                btilde[(i, j)] = fwd - back;
                rtilde[(i, j)] = back;
                rtilde_tr[(i, j)] = fwd;
                if i == j {
                    itilde[(i, j)] = 1;
                }
            }
        }
        let i_minus_rtr = itilde.sub(&rtilde_tr).expect("same shape");
        SeedMatrices {
            btilde,
            rtilde,
            rtilde_tr,
            itilde,
            i_minus_rtr,
        }
    }

    /// The principal n x n block of `btilde`.
    pub fn principal_b(&self) -> IMat {
        let n = self.btilde.cols();
        let mut b = IMat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                b[(i, j)] = self.btilde[(i, j)];
            }
        }
        b
    }
}

/// Finds a skew-symmetric integer `Lambda` with `Btilde^T Lambda = (D | 0)`,
/// `D = d I` positive, minimizing `d`.
///
/// Square case: `Lambda = -d B^{-1}` for the least `d` clearing denominators.
/// Principal-framing case `Btilde = [B; I]`: the canonical
/// `Lambda = [[0, -I], [I, -B]]` with `d = 1`. Anything else falls back to a
/// rational solve; the returned `d` is minimal for the particular solution
/// the elimination produces.
pub fn find_lambda(btilde: &IMat) -> Result<(IMat, Vec<i64>)> {
    let m = btilde.rows();
    let n = btilde.cols();
    if m == n {
        return square_lambda(btilde);
    }
    if m == 2 * n && is_principal_framing_shape(btilde) {
        let mut lambda = IMat::zeros(m, m);
        for i in 0..n {
            lambda[(i, n + i)] = -1;
            lambda[(n + i, i)] = 1;
            for j in 0..n {
                lambda[(n + i, n + j)] = -btilde[(i, j)];
            }
        }
        let check = btilde.transpose().mul(&lambda)?;
        debug_assert!(compatibility_d(&check, n).is_some());
        return Ok((lambda, vec![1; n]));
    }
    general_lambda(btilde)
}

fn is_principal_framing_shape(btilde: &IMat) -> bool {
    let n = btilde.cols();
    for i in 0..n {
        for j in 0..n {
            let want = if i == j { 1 } else { 0 };
            if btilde[(n + i, j)] != want {
                return false;
            }
        }
    }
    // The principal block must be skew-symmetric.
    for i in 0..n {
        for j in 0..n {
            if btilde[(i, j)] != -btilde[(j, i)] {
                return false;
            }
        }
    }
    true
}

fn square_lambda(b: &IMat) -> Result<(IMat, Vec<i64>)> {
    let n = b.rows();
    // Solve B^T L = d I over Q column by column: L_col_j solves B^T x = d e_j.
    // Equivalently compute B^{-1} rationally; fail on singular B.
    let mut cols: Vec<Vec<BigRational>> = Vec::with_capacity(n);
    let bt = b.transpose();
    for j in 0..n {
        let mut rhs = vec![BigRational::zero(); n];
        rhs[j] = BigRational::one();
        let Some(x) = solve_rational(&bt, &rhs) else {
            return Err(Error::NoCompatiblePair(
                "principal matrix B is singular".into(),
            ));
        };
        // Verify (solve_rational returns a particular solution even for
        // underdetermined systems; for singular B consistency can fail only
        // on some columns).
        cols.push(x);
    }
    // Least d making d * B^{-T}-columns integral.
    let flat: Vec<BigRational> = cols.iter().flatten().cloned().collect();
    let (_ints, d_big) = clear_denominators(&flat);
    let d: i64 = d_big
        .to_string()
        .parse()
        .map_err(|_| Error::NoCompatiblePair("denominator too large".into()))?;
    let mut lambda = IMat::zeros(n, n);
    for j in 0..n {
        for i in 0..n {
            let v = cols[j][i].clone() * BigRational::from_integer(BigInt::from(d));
            debug_assert!(v.is_integer());
            lambda[(i, j)] = int_to_i64(&v.to_integer())?;
        }
    }
    if !lambda.is_skew_symmetric() {
        return Err(Error::NoCompatiblePair(
            "B^{-1} is not skew-symmetric".into(),
        ));
    }
    let check = btilde_check(b, &lambda)?;
    match compatibility_d(&check, n) {
        Some(dv) => Ok((lambda, dv)),
        None => Err(Error::NoCompatiblePair("verification failed".into())),
    }
}

fn btilde_check(btilde: &IMat, lambda: &IMat) -> Result<IMat> {
    btilde.transpose().mul(lambda)
}

/// Checks `Btilde^T Lambda = (D | 0)` with positive diagonal `D`; returns the
/// diagonal.
pub fn compatibility_d(prod: &IMat, n: usize) -> Option<Vec<i64>> {
    let m = prod.cols();
    let mut d = Vec::with_capacity(n);
    for i in 0..n {
        for j in 0..m {
            let v = prod[(i, j)];
            if i == j {
                if v <= 0 {
                    return None;
                }
                d.push(v);
            } else if v != 0 {
                return None;
            }
        }
    }
    Some(d)
}

fn general_lambda(btilde: &IMat) -> Result<(IMat, Vec<i64>)> {
    let m = btilde.rows();
    let n = btilde.cols();
    // Unknowns: lambda_ij for i < j, plus d. Equations: (Btilde^T Lambda)_{jk}
    // = d delta_{jk} for j in 0..n, k in 0..m. Build the homogeneous system
    // with d folded in, then look for a solution with d = 1 and scale.
    let nvars = m * (m - 1) / 2;
    let var = |i: usize, j: usize| -> (usize, i64) {
        // lambda_ij with sign: lambda_ji = -lambda_ij for i < j.
        if i < j {
            (index_of(i, j, m), 1)
        } else {
            (index_of(j, i, m), -1)
        }
    };
    let mut rows: Vec<Vec<i64>> = Vec::new();
    let mut rhs: Vec<BigRational> = Vec::new();
    for j in 0..n {
        for k in 0..m {
            let mut row = vec![0i64; nvars];
            // (Btilde^T Lambda)_{jk} = sum_i b_ij lambda_ik.
            for i in 0..m {
                if i == k {
                    continue;
                }
                let b = btilde[(i, j)];
                if b == 0 {
                    continue;
                }
                let (v, s) = var(i, k);
                row[v] += b * s;
            }
            rows.push(row);
            rhs.push(if j == k {
                BigRational::one()
            } else {
                BigRational::zero()
            });
        }
    }
    let a = IMat::from_rows(rows)?;
    let Some(x) = solve_rational(&a, &rhs) else {
        return Err(Error::NoCompatiblePair(
            "no skew-symmetric solution exists".into(),
        ));
    };
    let (ints, d_big) = clear_denominators(&x);
    let d = int_to_i64(&d_big)?;
    let mut lambda = IMat::zeros(m, m);
    for i in 0..m {
        for j in (i + 1)..m {
            let v = int_to_i64(&ints[index_of(i, j, m)])?;
            lambda[(i, j)] = v;
            lambda[(j, i)] = -v;
        }
    }
    let check = btilde_check(btilde, &lambda)?;
    match compatibility_d(&check, n) {
        Some(dv) => Ok((lambda, dv)),
        None => Err(Error::NoCompatiblePair(format!(
            "solved system fails verification (d = {d})"
        ))),
    }
}

fn index_of(i: usize, j: usize, m: usize) -> usize {
    // Row-major upper triangle.
    i * m - i * (i + 1) / 2 + (j - i - 1)
}

fn int_to_i64(v: &BigInt) -> Result<i64> {
    if v.abs() > BigInt::from(i64::MAX) {
        return Err(Error::InvalidArg("integer overflow".into()));
    }
    Ok(v.to_string().parse().unwrap())
}

/// The three quivers every verification suite uses.
pub mod standard {
    use super::*;

    /// Two vertices, double arrow `1 -> 2`.
    pub fn kronecker() -> Arc<Quiver> {
        Quiver::new(2, 2, &[(1, 2), (1, 2)]).expect("valid")
    }

    /// `1 -> 2`, coefficient-free.
    pub fn a2() -> Arc<Quiver> {
        Quiver::new(2, 2, &[(1, 2)]).expect("valid")
    }

    /// Bipartite A3 with two sinks: `2 -> 1`, `2 -> 3`.
    pub fn a3_bipartite() -> Arc<Quiver> {
        Quiver::new(3, 3, &[(2, 1), (2, 3)]).expect("valid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kronecker_matrices() {
        let q = standard::kronecker();
        let m = SeedMatrices::of(&q);
        assert_eq!(m.btilde.to_rows(), vec![vec![0, 2], vec![-2, 0]]);
        assert_eq!(m.rtilde.to_rows(), vec![vec![0, 0], vec![2, 0]]);
        assert_eq!(m.rtilde_tr.to_rows(), vec![vec![0, 2], vec![0, 0]]);
        assert_eq!(
            m.rtilde_tr.sub(&m.rtilde).unwrap().to_rows(),
            m.btilde.to_rows()
        );
    }

    #[test]
    fn kronecker_lambda() {
        let q = standard::kronecker();
        let m = SeedMatrices::of(&q);
        let (lambda, d) = find_lambda(&m.btilde).unwrap();
        assert_eq!(lambda.to_rows(), vec![vec![0, 1], vec![-1, 0]]);
        assert_eq!(d, vec![2, 2]);
    }

    #[test]
    fn a2_framed_lambda_satisfies_identity() {
        let q = standard::a2().principal_framing().unwrap();
        assert_eq!(q.vertices(), 4);
        let m = SeedMatrices::of(&q);
        assert_eq!(
            m.btilde.to_rows(),
            vec![vec![0, 1], vec![-1, 0], vec![1, 0], vec![0, 1]]
        );
        let (lambda, d) = find_lambda(&m.btilde).unwrap();
        assert!(lambda.is_skew_symmetric());
        assert_eq!(d, vec![1, 1]);
        let prod = m.btilde.transpose().mul(&lambda).unwrap();
        assert_eq!(compatibility_d(&prod, 2), Some(vec![1, 1]));
    }

    #[test]
    fn singular_b_has_no_pair() {
        let q = Quiver::new(2, 2, &[]).unwrap();
        let m = SeedMatrices::of(&q);
        assert!(matches!(
            find_lambda(&m.btilde),
            Err(Error::NoCompatiblePair(_))
        ));
    }

    #[test]
    fn euler_form_a2() {
        let q = standard::a2();
        assert_eq!(q.euler(&[1, 0], &[0, 1]).unwrap(), -1);
        assert_eq!(q.euler(&[0, 1], &[1, 0]).unwrap(), 0);
    }

    #[test]
    fn reflection_involution_and_bipartite() {
        let q = standard::kronecker();
        assert!(q.is_sink(1));
        let r = q.reflect(2).unwrap();
        assert_eq!(r.arrow_count(1, 0), 2);
        let rr = r.reflect(2).unwrap();
        assert_eq!(*rr, *q);

        // A3 as 1 -> 2 <- 3, reflect the sink 2.
        let a3 = Quiver::new(3, 3, &[(1, 2), (3, 2)]).unwrap();
        let refl = a3.reflect(2).unwrap();
        assert_eq!(refl.arrow_count(1, 0), 1);
        assert_eq!(refl.arrow_count(1, 2), 1);
        assert!(a3.is_bipartite());
        assert!(refl.is_bipartite());
        // Vertex 1 of A3 (a source) reflects too; vertex 2 of the path
        // 1 -> 2 -> 3 does not.
        let path = Quiver::new(3, 3, &[(1, 2), (2, 3)]).unwrap();
        assert!(matches!(path.reflect(2), Err(Error::NotSinkOrSource(2))));
        assert!(!path.is_bipartite());
    }

    #[test]
    fn framing_rejected_on_framed() {
        let q = standard::a2().principal_framing().unwrap();
        assert!(q.principal_framing().is_err());
        assert!(q.is_bipartite());
    }

    #[test]
    fn cycle_rejected() {
        assert!(matches!(
            Quiver::new(2, 2, &[(1, 2), (2, 1)]),
            Err(Error::CycleDetected)
        ));
        assert!(matches!(
            Quiver::new(2, 2, &[(1, 3)]),
            Err(Error::VertexOutOfRange(3))
        ));
    }

    #[test]
    fn json_round_trip() {
        let q = standard::a3_bipartite();
        let j = q.to_json();
        let back = Quiver::from_json(&j).unwrap();
        assert_eq!(*back, *q);
    }

    #[test]
    fn a3_bipartite_has_two_sinks() {
        let q = standard::a3_bipartite();
        assert!(q.is_sink(0));
        assert!(q.is_sink(2));
        assert!(q.is_source(1));
    }
}
