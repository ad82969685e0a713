//! Exact coefficient arithmetic.
//!
//! A [`Scalar`] is a Laurent polynomial in the formal symbol `u` with rational
//! coefficients, where `u` stands for `q^{1/2}`. In *free* mode no relation is
//! imposed. In *related* mode `u` is tied to a finite-field cardinality by
//! `u^N = Q0`, and arithmetic happens in the number field `Q(Q0^{1/N})`
//! represented over the power basis of the real positive root. The number
//! field (rather than the quotient ring `Q[u]/(u^N - Q0)`) is used because the
//! quotient ring may have zero divisors while the torus division algorithm
//! needs exact division.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

/// Returns `Some((p, k))` with `n = p^k`, `p` prime, when `n >= 2` is a prime power.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let mut m = n;
    let mut p = 0u64;
    let mut d = 2u64;
    while d * d <= m {
        if m % d == 0 {
            p = d;
            break;
        }
        d += 1;
    }
    if p == 0 {
        return Some((n, 1)); // n itself is prime
    }
    let mut k = 0u32;
    while m % p == 0 {
        m /= p;
        k += 1;
    }
    if m == 1 {
        Some((p, k))
    } else {
        None
    }
}

#[derive(Debug, PartialEq, Eq)]
struct RelatedRepr {
    /// Relation exponent: `u^n = q0`.
    n: u32,
    /// Field cardinality the relation encodes.
    q0: u64,
    /// Monic minimal polynomial of `q0^{1/n}` over `Q`, low-to-high coefficients.
    minpoly: Vec<BigInt>,
    /// Degree of the extension.
    degree: usize,
    /// `q0 = p^k`.
    p: u64,
    k: u32,
}

/// Describes the coefficient ring: free `Q[u^{±1}]` or the number field `Q(q0^{1/N})`.
#[derive(Debug, Clone)]
pub enum ScalarRing {
    Free,
    Related(Arc<RelatedRing>),
}

#[derive(Debug)]
pub struct RelatedRing(RelatedRepr);

impl PartialEq for ScalarRing {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (ScalarRing::Free, ScalarRing::Free) => true,
            (ScalarRing::Related(a), ScalarRing::Related(b)) => Arc::ptr_eq(a, b) || a.0 == b.0,
            _ => false,
        }
    }
}
impl Eq for ScalarRing {}

impl ScalarRing {
    pub fn free() -> Self {
        ScalarRing::Free
    }

    /// Builds the related ring with relation `u^n = q0`.
    ///
    /// The minimal polynomial of the positive real root `q0^{1/n}` is found by
    /// perfect-power reduction: with `q0 = p^k` and `g = gcd(n, k)` the root
    /// equals `p^{(k/g)/(n/g)}`, so the candidate binomial is
    /// `x^{n/g} - p^{k/g}`. Binomial irreducibility (Vahlen–Capelli) is then
    /// asserted, including the classical `x^4 + 4t^4` exceptional split, which
    /// cannot occur for a positive prime power but is checked all the same.
    pub fn related(n: u32, q0: u64) -> Result<Self> {
        if n < 2 || n % 2 != 0 {
            return Err(Error::InvalidArg(format!(
                "relation exponent N must be even and >= 2, got {n}"
            )));
        }
        let (p, k) = prime_power(q0).ok_or(Error::NotPrimePower(q0))?;
        let g = gcd_u64(n as u64, k as u64) as u32;
        let n_red = n / g;
        let k_red = k / g;
        let base = pow_u64(p, k_red)?;
        // Vahlen–Capelli: x^m - a (a > 0 rational integer) is irreducible iff
        // a is not a d-th power for any prime d | m, and not -4t^4 when 4 | m.
        // After the gcd reduction no prime divides both m and the exponent of
        // p in a, so only the (vacuous) -4t^4 branch remains; keep the checks
        // as assertions so a violated precondition fails loudly.
        for d in prime_divisors(n_red as u64) {
            debug_assert!(
                k_red as u64 % d != 0,
                "perfect-power reduction left a {d}-th power"
            );
        }
        debug_assert!(n_red % 4 != 0 || !is_minus_four_fourth_power(base));
        let mut minpoly = vec![BigInt::zero(); n_red as usize + 1];
        minpoly[0] = -BigInt::from(base);
        minpoly[n_red as usize] = BigInt::one();
        // Sanity assertion: the positive real n-th root of q0 satisfies the
        // candidate polynomial to coarse floating precision.
        let root = (q0 as f64).powf(1.0 / n as f64);
        let approx = root.powi(n_red as i32) - base as f64;
        debug_assert!(approx.abs() < 1e-6 * base as f64);
        Ok(ScalarRing::Related(Arc::new(RelatedRing(RelatedRepr {
            n,
            q0,
            minpoly,
            degree: n_red as usize,
            p,
            k,
        }))))
    }

    pub fn is_related(&self) -> bool {
        matches!(self, ScalarRing::Related(_))
    }

    /// Extension degree; 0 in free mode by convention.
    pub fn degree(&self) -> usize {
        match self {
            ScalarRing::Free => 0,
            ScalarRing::Related(r) => r.0.degree,
        }
    }

    pub fn relation(&self) -> Option<(u32, u64)> {
        match self {
            ScalarRing::Free => None,
            ScalarRing::Related(r) => Some((r.0.n, r.0.q0)),
        }
    }

    /// Minimal polynomial of the root, low-to-high; `None` in free mode.
    pub fn minpoly(&self) -> Option<&[BigInt]> {
        match self {
            ScalarRing::Free => None,
            ScalarRing::Related(r) => Some(&r.0.minpoly),
        }
    }
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

fn pow_u64(base: u64, exp: u32) -> Result<u64> {
    base.checked_pow(exp)
        .ok_or_else(|| Error::InvalidArg("prime power overflows u64".into()))
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn is_minus_four_fourth_power(_a: u64) -> bool {
    // a > 0 here, so a = -4 t^4 is impossible.
    false
}

/// One exact coefficient. Comparison is decidable because both representations
/// are canonical: free scalars store no zero coefficients, related scalars are
/// fully reduced modulo the minimal polynomial.
#[derive(Debug, Clone)]
pub struct Scalar {
    ring: ScalarRing,
    repr: Repr,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Repr {
    /// u-exponent -> nonzero rational coefficient.
    Free(BTreeMap<i64, BigRational>),
    /// Coefficients over the power basis `1, r, ..., r^{deg-1}`.
    Related(Vec<BigRational>),
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.repr == other.repr
    }
}
impl Eq for Scalar {}

impl Scalar {
    pub fn zero(ring: &ScalarRing) -> Self {
        match ring {
            ScalarRing::Free => Scalar {
                ring: ring.clone(),
                repr: Repr::Free(BTreeMap::new()),
            },
            ScalarRing::Related(r) => Scalar {
                ring: ring.clone(),
                repr: Repr::Related(vec![BigRational::zero(); r.0.degree]),
            },
        }
    }

    pub fn one(ring: &ScalarRing) -> Self {
        Scalar::from_rational(ring, BigRational::one())
    }

    pub fn from_int(ring: &ScalarRing, v: i64) -> Self {
        Scalar::from_rational(ring, BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_u128(ring: &ScalarRing, v: u128) -> Self {
        Scalar::from_rational(ring, BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_rational(ring: &ScalarRing, v: BigRational) -> Self {
        match ring {
            ScalarRing::Free => {
                let mut terms = BTreeMap::new();
                if !v.is_zero() {
                    terms.insert(0, v);
                }
                Scalar {
                    ring: ring.clone(),
                    repr: Repr::Free(terms),
                }
            }
            ScalarRing::Related(r) => {
                let mut coeffs = vec![BigRational::zero(); r.0.degree];
                coeffs[0] = v;
                Scalar {
                    ring: ring.clone(),
                    repr: Repr::Related(coeffs),
                }
            }
        }
    }

    /// The scalar `u^k`; in related mode `r^k` reduced, with negative powers
    /// realized by field inversion of the root.
    pub fn u_power(ring: &ScalarRing, k: i64) -> Self {
        match ring {
            ScalarRing::Free => {
                let mut terms = BTreeMap::new();
                terms.insert(k, BigRational::one());
                Scalar {
                    ring: ring.clone(),
                    repr: Repr::Free(terms),
                }
            }
            ScalarRing::Related(r) => {
                let deg = r.0.degree;
                let base_pow = |e: u64| -> Vec<BigRational> {
                    // r^e over the power basis; minpoly is the binomial
                    // x^deg - c, so folding is multiplication by c.
                    let c = -r.0.minpoly[0].clone();
                    let c = BigRational::from_integer(c);
                    let mut coeffs = vec![BigRational::zero(); deg];
                    let fold = (e / deg as u64) as u32;
                    let rem = (e % deg as u64) as usize;
                    let mut v = BigRational::one();
                    for _ in 0..fold {
                        v *= c.clone();
                    }
                    coeffs[rem] = v;
                    coeffs
                };
                let repr = if k >= 0 {
                    Repr::Related(base_pow(k as u64))
                } else {
                    // r^{-1} = r^{deg-1} / c with c = r^deg.
                    let c = BigRational::from_integer(-r.0.minpoly[0].clone());
                    let e = (-k) as u64;
                    let pos = base_pow(e);
                    // invert: (r^e)^{-1} where r^e = v * r^rem.
                    // r^{-rem} = r^{deg-rem}/c for rem > 0.
                    let rem = (e % deg as u64) as usize;
                    let scale = pos.iter().find(|x| !x.is_zero()).cloned().unwrap();
                    let mut coeffs = vec![BigRational::zero(); deg];
                    if rem == 0 {
                        coeffs[0] = scale.recip();
                    } else {
                        coeffs[deg - rem] = scale.recip() / c;
                    }
                    Repr::Related(coeffs)
                };
                Scalar {
                    ring: ring.clone(),
                    repr,
                }
            }
        }
    }

    pub fn ring(&self) -> &ScalarRing {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Free(t) => t.is_empty(),
            Repr::Related(c) => c.iter().all(|x| x.is_zero()),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == Scalar::one(&self.ring)
    }

    fn check_ring(&self, other: &Scalar) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn add(&self, other: &Scalar) -> Result<Scalar> {
        self.check_ring(other)?;
        let repr = match (&self.repr, &other.repr) {
            (Repr::Free(a), Repr::Free(b)) => {
                let mut out = a.clone();
                for (e, c) in b {
                    let entry = out.entry(*e).or_insert_with(BigRational::zero);
                    *entry += c;
                    if entry.is_zero() {
                        out.remove(e);
                    }
                }
                Repr::Free(out)
            }
            (Repr::Related(a), Repr::Related(b)) => {
                Repr::Related(a.iter().zip(b).map(|(x, y)| x + y).collect())
            }
            _ => unreachable!("ring equality already checked"),
        };
        Ok(Scalar {
            ring: self.ring.clone(),
            repr,
        })
    }

    pub fn neg(&self) -> Scalar {
        let repr = match &self.repr {
            Repr::Free(a) => Repr::Free(a.iter().map(|(e, c)| (*e, -c)).collect()),
            Repr::Related(a) => Repr::Related(a.iter().map(|x| -x).collect()),
        };
        Scalar {
            ring: self.ring.clone(),
            repr,
        }
    }

    pub fn sub(&self, other: &Scalar) -> Result<Scalar> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Result<Scalar> {
        self.check_ring(other)?;
        let repr = match (&self.repr, &other.repr) {
            (Repr::Free(a), Repr::Free(b)) => {
                let mut out: BTreeMap<i64, BigRational> = BTreeMap::new();
                for (ea, ca) in a {
                    for (eb, cb) in b {
                        let e = ea + eb;
                        let entry = out.entry(e).or_insert_with(BigRational::zero);
                        *entry += ca * cb;
                    }
                }
                out.retain(|_, c| !c.is_zero());
                Repr::Free(out)
            }
            (Repr::Related(a), Repr::Related(b)) => {
                let ring = match &self.ring {
                    ScalarRing::Related(r) => r,
                    _ => unreachable!(),
                };
                let deg = ring.0.degree;
                let c = BigRational::from_integer(-ring.0.minpoly[0].clone());
                let mut prod = vec![BigRational::zero(); 2 * deg];
                for (i, x) in a.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (j, y) in b.iter().enumerate() {
                        if y.is_zero() {
                            continue;
                        }
                        prod[i + j] += x * y;
                    }
                }
                // Reduce modulo x^deg - c.
                let mut out = vec![BigRational::zero(); deg];
                for (i, v) in prod.into_iter().enumerate() {
                    if v.is_zero() {
                        continue;
                    }
                    if i < deg {
                        out[i] += v;
                    } else {
                        out[i - deg] += v * c.clone();
                    }
                }
                Repr::Related(out)
            }
            _ => unreachable!(),
        };
        Ok(Scalar {
            ring: self.ring.clone(),
            repr,
        })
    }

    /// Multiplicative inverse. Related mode is a field, so every nonzero
    /// scalar is invertible; free-mode inverses exist only for single terms.
    pub fn inverse(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match &self.repr {
            Repr::Free(t) => {
                if t.len() != 1 {
                    return Err(Error::NotDivisible);
                }
                let (e, c) = t.iter().next().unwrap();
                let mut terms = BTreeMap::new();
                terms.insert(-e, c.recip());
                Ok(Scalar {
                    ring: self.ring.clone(),
                    repr: Repr::Free(terms),
                })
            }
            Repr::Related(a) => {
                let ring = match &self.ring {
                    ScalarRing::Related(r) => r,
                    _ => unreachable!(),
                };
                let inv = poly_field_inverse(a, &ring.0.minpoly)?;
                Ok(Scalar {
                    ring: self.ring.clone(),
                    repr: Repr::Related(inv),
                })
            }
        }
    }

    /// Exact division. In related mode this always succeeds for a nonzero
    /// divisor; in free mode it succeeds exactly when the divisor divides in
    /// `Q[u^{±1}]`.
    pub fn div_exact(&self, other: &Scalar) -> Result<Scalar> {
        self.check_ring(other)?;
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Scalar::zero(&self.ring));
        }
        match (&self.repr, &other.repr) {
            (Repr::Free(a), Repr::Free(b)) => {
                let q = laurent_div_exact(a, b).ok_or(Error::NotDivisible)?;
                Ok(Scalar {
                    ring: self.ring.clone(),
                    repr: Repr::Free(q),
                })
            }
            (Repr::Related(_), Repr::Related(_)) => self.mul(&other.inverse()?),
            _ => unreachable!(),
        }
    }

    /// Bar involution `u -> u^{-1}` (free mode only).
    pub fn bar(&self) -> Result<Scalar> {
        match &self.repr {
            Repr::Free(t) => Ok(Scalar {
                ring: self.ring.clone(),
                repr: Repr::Free(t.iter().map(|(e, c)| (-e, c.clone())).collect()),
            }),
            Repr::Related(_) => Err(Error::InvalidArg(
                "bar involution is defined on the free ring".into(),
            )),
        }
    }

    /// Specialization at `u = 1` (free mode): the sum of all coefficients.
    pub fn specialize_at_one(&self) -> Result<BigRational> {
        match &self.repr {
            Repr::Free(t) => Ok(t.values().fold(BigRational::zero(), |a, c| a + c)),
            Repr::Related(_) => Err(Error::InvalidArg(
                "specialization applies to the free ring".into(),
            )),
        }
    }

    /// Ring homomorphism `Q[u^{±1}] -> Q(q0^{1/N})`, `u -> q0^{1/N}`.
    pub fn reduce_to(&self, ring: &ScalarRing) -> Result<Scalar> {
        match (&self.repr, ring) {
            (_, ScalarRing::Free) if self.ring == *ring => Ok(self.clone()),
            (Repr::Free(t), ScalarRing::Related(_)) => {
                let mut acc = Scalar::zero(ring);
                for (e, c) in t {
                    let term =
                        Scalar::u_power(ring, *e).mul(&Scalar::from_rational(ring, c.clone()))?;
                    acc = acc.add(&term)?;
                }
                Ok(acc)
            }
            (Repr::Related(_), _) if self.ring == *ring => Ok(self.clone()),
            _ => Err(Error::RingMismatch),
        }
    }

    /// Free-mode term view for serialization.
    pub fn free_terms(&self) -> Option<&BTreeMap<i64, BigRational>> {
        match &self.repr {
            Repr::Free(t) => Some(t),
            _ => None,
        }
    }

    /// Related-mode coefficient view for serialization.
    pub fn related_coeffs(&self) -> Option<&[BigRational]> {
        match &self.repr {
            Repr::Related(c) => Some(c),
            _ => None,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match &self.repr {
            Repr::Free(t) => {
                let mut map = serde_json::Map::new();
                for (e, c) in t {
                    map.insert(e.to_string(), serde_json::Value::String(c.to_string()));
                }
                serde_json::Value::Object(map)
            }
            Repr::Related(coeffs) => {
                let (n, q0) = self.ring.relation().unwrap();
                serde_json::json!({
                    "basis": coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                    "N": n,
                    "Q0": q0,
                })
            }
        }
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Scalar> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Json("scalar must be a JSON object".into()))?;
        if obj.contains_key("basis") {
            let n = obj
                .get("N")
                .and_then(|x| x.as_u64())
                .ok_or_else(|| Error::Json("related scalar needs N".into()))?;
            let q0 = obj
                .get("Q0")
                .and_then(|x| x.as_u64())
                .ok_or_else(|| Error::Json("related scalar needs Q0".into()))?;
            let ring = ScalarRing::related(n as u32, q0)?;
            let deg = ring.degree();
            let basis = obj
                .get("basis")
                .and_then(|x| x.as_array())
                .ok_or_else(|| Error::Json("basis must be an array".into()))?;
            if basis.len() != deg {
                return Err(Error::Json(format!(
                    "basis length {} does not match degree {deg}",
                    basis.len()
                )));
            }
            let mut coeffs = Vec::with_capacity(deg);
            for b in basis {
                let s = b
                    .as_str()
                    .ok_or_else(|| Error::Json("basis entries are strings".into()))?;
                coeffs.push(parse_rational(s)?);
            }
            Ok(Scalar {
                ring,
                repr: Repr::Related(coeffs),
            })
        } else {
            let mut terms = BTreeMap::new();
            for (k, val) in obj {
                let e: i64 = k
                    .parse()
                    .map_err(|_| Error::Json(format!("bad u-exponent `{k}`")))?;
                let s = val
                    .as_str()
                    .ok_or_else(|| Error::Json("coefficients are strings".into()))?;
                let c = parse_rational(s)?;
                if !c.is_zero() {
                    terms.insert(e, c);
                }
            }
            Ok(Scalar {
                ring: ScalarRing::Free,
                repr: Repr::Free(terms),
            })
        }
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    BigRational::from_str(s).map_err(|_| Error::Json(format!("bad rational `{s}`")))
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Free(t) => {
                if t.is_empty() {
                    return write!(f, "0");
                }
                let mut first = true;
                for (e, c) in t.iter().rev() {
                    let cs = c.to_string();
                    if first {
                        first = false;
                    } else if cs.starts_with('-') {
                        write!(f, " - ")?;
                    } else {
                        write!(f, " + ")?;
                    }
                    let mag = if !first && cs.starts_with('-') {
                        cs.trim_start_matches('-').to_string()
                    } else {
                        cs.clone()
                    };
                    match e {
                        0 => write!(f, "{mag}")?,
                        1 if mag == "1" => write!(f, "u")?,
                        1 => write!(f, "{mag}*u")?,
                        _ if mag == "1" => write!(f, "u^{e}")?,
                        _ => write!(f, "{mag}*u^{e}")?,
                    }
                }
                Ok(())
            }
            Repr::Related(coeffs) => {
                if self.is_zero() {
                    return write!(f, "0");
                }
                let mut parts = Vec::new();
                for (i, c) in coeffs.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let term = match i {
                        0 => c.to_string(),
                        1 => format!("{c}*r"),
                        _ => format!("{c}*r^{i}"),
                    };
                    parts.push(term);
                }
                write!(f, "{}", parts.join(" + "))
            }
        }
    }
}

/// Exact division of Laurent polynomials over `Q`: returns the quotient map
/// when the remainder vanishes.
fn laurent_div_exact(
    a: &BTreeMap<i64, BigRational>,
    b: &BTreeMap<i64, BigRational>,
) -> Option<BTreeMap<i64, BigRational>> {
    let (alo, ahi) = (*a.keys().next()?, *a.keys().next_back()?);
    let (blo, bhi) = (*b.keys().next()?, *b.keys().next_back()?);
    // Shift both to ordinary polynomials.
    let da = (ahi - alo) as usize;
    let db = (bhi - blo) as usize;
    if da < db {
        return None;
    }
    let mut pa = vec![BigRational::zero(); da + 1];
    for (e, c) in a {
        pa[(e - alo) as usize] = c.clone();
    }
    let mut pb = vec![BigRational::zero(); db + 1];
    for (e, c) in b {
        pb[(e - blo) as usize] = c.clone();
    }
    let mut q = vec![BigRational::zero(); da - db + 1];
    let lead_b = pb[db].clone();
    let mut rem = pa;
    for i in (0..=(da - db)).rev() {
        let coeff = rem[i + db].clone() / lead_b.clone();
        if !coeff.is_zero() {
            for (j, bc) in pb.iter().enumerate() {
                let t = coeff.clone() * bc;
                rem[i + j] -= t;
            }
        }
        q[i] = coeff;
    }
    if rem.iter().any(|c| !c.is_zero()) {
        return None;
    }
    let shift = alo - blo;
    let mut out = BTreeMap::new();
    for (i, c) in q.into_iter().enumerate() {
        if !c.is_zero() {
            out.insert(shift + i as i64, c);
        }
    }
    Some(out)
}

/// Inverse of `a` modulo the monic polynomial `m` via the extended Euclidean
/// algorithm over `Q[x]`.
fn poly_field_inverse(a: &[BigRational], m: &[BigInt]) -> Result<Vec<BigRational>> {
    let deg = m.len() - 1;
    let m_rat: Vec<BigRational> = m
        .iter()
        .map(|c| BigRational::from_integer(c.clone()))
        .collect();
    let mut r0 = m_rat;
    let mut r1: Vec<BigRational> = a.to_vec();
    trim(&mut r0);
    trim(&mut r1);
    if r1.is_empty() {
        return Err(Error::DivisionByZero);
    }
    let mut s0 = vec![];
    let mut s1 = vec![BigRational::one()];
    while poly_deg(&r1) > 0 {
        let (q, r) = poly_divmod(&r0, &r1);
        let s = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
        if r1.is_empty() {
            // gcd has positive degree: the modulus is not irreducible or the
            // element is zero mod m. Construction guarantees it does not happen.
            return Err(Error::InvalidArg(
                "element not invertible mod minpoly".into(),
            ));
        }
    }
    // r1 is a nonzero constant c: inverse = s1 / c, reduced mod m.
    let c = r1[0].clone();
    let mut inv: Vec<BigRational> = s1.into_iter().map(|x| x / c.clone()).collect();
    // Reduce modulo m (degree < deg by construction of the algorithm).
    while poly_deg(&inv) >= deg as i64 && !inv.is_empty() {
        let (_q, r) = poly_divmod(&inv, &{
            let mut mm: Vec<BigRational> = m
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect();
            trim(&mut mm);
            mm
        });
        inv = r;
    }
    let mut out = vec![BigRational::zero(); deg];
    for (i, c) in inv.into_iter().enumerate() {
        out[i] = c;
    }
    Ok(out)
}

fn trim(p: &mut Vec<BigRational>) {
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
}

fn poly_deg(p: &[BigRational]) -> i64 {
    p.len() as i64 - 1
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    trim(&mut rem);
    let db = b.len() - 1;
    if rem.len() < b.len() {
        return (vec![], rem);
    }
    let mut q = vec![BigRational::zero(); rem.len() - db];
    let lead = b[db].clone();
    for i in (0..q.len()).rev() {
        if rem.len() < i + db + 1 {
            continue;
        }
        let c = rem[i + db].clone() / lead.clone();
        if c.is_zero() {
            continue;
        }
        q[i] = c.clone();
        for (j, bc) in b.iter().enumerate() {
            let t = c.clone() * bc;
            rem[i + j] -= t;
        }
        trim(&mut rem);
    }
    (q, rem)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] -= x;
    }
    trim(&mut out);
    out
}

/// Coefficients of the classical Gaussian binomial `[n k]_x` (Pascal
/// recurrence `[r j] = [r-1 j-1] + x^j [r-1 j]`), low-to-high.
pub fn gaussian_binomial_poly(n: u32, k: u32) -> Vec<BigInt> {
    if k > n {
        return vec![];
    }
    // row[j] holds [r j]_x for the current row r.
    let mut row: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
    for r in 1..=n {
        let kk = k.min(r) as usize;
        let mut next: Vec<Vec<BigInt>> = Vec::with_capacity(kk + 1);
        for j in 0..=kk {
            if j == 0 {
                next.push(vec![BigInt::one()]);
                continue;
            }
            let mut acc = if j <= row.len() - 1 {
                // x^j * [r-1 j]
                let mut shifted = vec![BigInt::zero(); j];
                shifted.extend(row[j].iter().cloned());
                shifted
            } else {
                vec![]
            };
            // + [r-1 j-1]
            let prev = &row[j - 1];
            if acc.len() < prev.len() {
                acc.resize(prev.len(), BigInt::zero());
            }
            for (i, c) in prev.iter().enumerate() {
                acc[i] += c;
            }
            next.push(acc);
        }
        row = next;
    }
    row.swap_remove(k as usize)
}

/// The balanced quantum binomial evaluated at base `q^{d/2} = u^d`.
///
/// Computed from the classical Gaussian binomial, which is a polynomial with
/// nonnegative integer coefficients, then recentered by `u^{-d k (n-k)}`; the
/// result is denominator-free.
pub fn qbinom(n: u32, k: u32, d: u32, ring: &ScalarRing) -> Result<Scalar> {
    if k > n {
        return Err(Error::InvalidArg(format!("qbinom: k={k} exceeds n={n}")));
    }
    if d == 0 {
        return Err(Error::InvalidArg("qbinom: d must be positive".into()));
    }
    let gauss = gaussian_binomial_poly(n, k);
    let free = ScalarRing::Free;
    let mut acc = Scalar::zero(&free);
    let shift = -(d as i64) * (k as i64) * ((n - k) as i64);
    for (j, c) in gauss.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let e = shift + 2 * (d as i64) * j as i64;
        let term = Scalar::u_power(&free, e).mul(&Scalar::from_rational(
            &free,
            BigRational::from_integer(c.clone()),
        ))?;
        acc = acc.add(&term)?;
    }
    match ring {
        ScalarRing::Free => Ok(acc),
        ScalarRing::Related(_) => acc.reduce_to(ring),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn free() -> ScalarRing {
        ScalarRing::free()
    }

    #[test]
    fn related_ring_minpoly_squarefree() {
        let r = ScalarRing::related(2, 5).unwrap();
        assert_eq!(r.degree(), 2);
        assert_eq!(
            r.minpoly().unwrap(),
            &[BigInt::from(-5), BigInt::from(0), BigInt::from(1)]
        );
    }

    #[test]
    fn related_ring_minpoly_perfect_power() {
        // 4^{1/4} = sqrt(2): minpoly x^2 - 2.
        let r = ScalarRing::related(4, 4).unwrap();
        assert_eq!(r.degree(), 2);
        assert_eq!(
            r.minpoly().unwrap(),
            &[BigInt::from(-2), BigInt::from(0), BigInt::from(1)]
        );
    }

    #[test]
    fn related_ring_minpoly_rational_root() {
        let r = ScalarRing::related(2, 4).unwrap();
        assert_eq!(r.degree(), 1);
        assert_eq!(r.minpoly().unwrap(), &[BigInt::from(-2), BigInt::from(1)]);
    }

    #[test]
    fn related_ring_rejects_bad_input() {
        assert!(ScalarRing::related(3, 5).is_err()); // N odd
        assert!(ScalarRing::related(2, 6).is_err()); // 6 not a prime power
        assert!(ScalarRing::related(2, 1).is_err());
    }

    #[test]
    fn free_difference_of_squares() {
        let f = free();
        let u = Scalar::u_power(&f, 1);
        let uinv = Scalar::u_power(&f, -1);
        let a = u.add(&uinv).unwrap();
        let b = u.sub(&uinv).unwrap();
        let prod = a.mul(&b).unwrap();
        let expect = Scalar::u_power(&f, 2)
            .sub(&Scalar::u_power(&f, -2))
            .unwrap();
        assert_eq!(prod, expect);
    }

    #[test]
    fn related_relation_u_squared() {
        let r = ScalarRing::related(2, 5).unwrap();
        let u = Scalar::u_power(&r, 1);
        assert_eq!(u.mul(&u).unwrap(), Scalar::from_int(&r, 5));
    }

    #[test]
    fn related_relation_fourth_power() {
        let r = ScalarRing::related(4, 4).unwrap();
        let u3 = Scalar::u_power(&r, 3);
        let u = Scalar::u_power(&r, 1);
        assert_eq!(u3.mul(&u).unwrap(), Scalar::from_int(&r, 4));
    }

    #[test]
    fn u_power_negative_related() {
        for (n, q0) in [(2u32, 5u64), (4, 4), (4, 9), (4, 2), (2, 3)] {
            let r = ScalarRing::related(n, q0).unwrap();
            for k in -5i64..=5 {
                let a = Scalar::u_power(&r, k);
                let b = Scalar::u_power(&r, -k);
                assert_eq!(
                    a.mul(&b).unwrap(),
                    Scalar::one(&r),
                    "u^{k} inverse in ({n},{q0})"
                );
            }
        }
    }

    #[test]
    fn qbinom_trivial_and_derived() {
        let f = free();
        assert_eq!(qbinom(1, 1, 1, &f).unwrap(), Scalar::one(&f));
        // [2 1] at base q = u^2: q + q^{-1}.
        let expect = Scalar::u_power(&f, 2)
            .add(&Scalar::u_power(&f, -2))
            .unwrap();
        assert_eq!(qbinom(2, 1, 2, &f).unwrap(), expect);
        // [4 2] at base q: q^4 + q^2 + 2 + q^-2 + q^-4.
        let mut expect = Scalar::from_int(&f, 2);
        for e in [8i64, 4, -4, -8] {
            expect = expect.add(&Scalar::u_power(&f, e)).unwrap();
        }
        assert_eq!(qbinom(4, 2, 2, &f).unwrap(), expect);
    }

    #[test]
    fn qbinom_rejects_out_of_range() {
        let f = free();
        assert!(qbinom(2, 3, 1, &f).is_err());
    }

    #[test]
    fn qbinom_symmetry_and_specialization() {
        let f = free();
        for n in 0..=8u32 {
            for k in 0..=n {
                let a = qbinom(n, k, 1, &f).unwrap();
                let b = qbinom(n, n - k, 1, &f).unwrap();
                assert_eq!(a, b, "symmetry at ({n},{k})");
                // Specialize u = 1: the integer binomial.
                let v = a.specialize_at_one().unwrap();
                let mut c = BigRational::one();
                for i in 0..k {
                    c *= BigRational::from_integer(BigInt::from(n - i));
                    c /= BigRational::from_integer(BigInt::from(i + 1));
                }
                assert_eq!(v, c, "specialization at ({n},{k})");
                // Bar invariance.
                assert_eq!(a.bar().unwrap(), a, "bar at ({n},{k})");
            }
        }
    }

    #[test]
    fn related_mode_is_a_field() {
        let r = ScalarRing::related(4, 4).unwrap();
        // Pseudo-random nonzero elements: sums of u-powers with small coefficients.
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..40 {
            let mut s = Scalar::zero(&r);
            for e in -3i64..=3 {
                let c = (next() % 7) as i64 - 3;
                if c != 0 {
                    let t = Scalar::u_power(&r, e)
                        .mul(&Scalar::from_int(&r, c))
                        .unwrap();
                    s = s.add(&t).unwrap();
                }
            }
            if s.is_zero() {
                continue;
            }
            let inv = s.inverse().unwrap();
            assert_eq!(s.mul(&inv).unwrap(), Scalar::one(&r));
        }
    }

    #[test]
    fn reduction_is_a_ring_homomorphism() {
        let f = free();
        let r = ScalarRing::related(4, 9).unwrap();
        let mut state = 0xdeadbeefcafef00du64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        let mut rand_scalar = |ring: &ScalarRing| {
            let mut s = Scalar::zero(ring);
            for e in -2i64..=2 {
                let c = (next() % 9) as i64 - 4;
                if c != 0 {
                    let t = Scalar::u_power(ring, e)
                        .mul(&Scalar::from_int(ring, c))
                        .unwrap();
                    s = s.add(&t).unwrap();
                }
            }
            s
        };
        for _ in 0..25 {
            let a = rand_scalar(&f);
            let b = rand_scalar(&f);
            let sum = a.add(&b).unwrap().reduce_to(&r).unwrap();
            let prod = a.mul(&b).unwrap().reduce_to(&r).unwrap();
            let ra = a.reduce_to(&r).unwrap();
            let rb = b.reduce_to(&r).unwrap();
            assert_eq!(sum, ra.add(&rb).unwrap());
            assert_eq!(prod, ra.mul(&rb).unwrap());
        }
    }

    #[test]
    fn free_exact_division() {
        let f = free();
        let u = Scalar::u_power(&f, 1);
        let uinv = Scalar::u_power(&f, -1);
        let a = u.add(&uinv).unwrap();
        let b = u.sub(&uinv).unwrap();
        let prod = a.mul(&b).unwrap();
        assert_eq!(prod.div_exact(&a).unwrap(), b);
        assert_eq!(prod.div_exact(&b).unwrap(), a);
        // u^2 - u^-2 is not divisible by u + 2.
        let c = u.add(&Scalar::from_int(&f, 2)).unwrap();
        assert!(matches!(prod.div_exact(&c), Err(Error::NotDivisible)));
    }

    #[test]
    fn scalar_json_round_trip() {
        let f = free();
        let s = Scalar::u_power(&f, 2)
            .mul(&Scalar::from_rational(&f, parse_rational("-3/2").unwrap()))
            .unwrap()
            .add(&Scalar::one(&f))
            .unwrap();
        let j = s.to_json();
        assert_eq!(j["2"], "-3/2");
        assert_eq!(Scalar::from_json(&j).unwrap(), s);

        let r = ScalarRing::related(4, 4).unwrap();
        let s = Scalar::u_power(&r, 3)
            .add(&Scalar::from_int(&r, 2))
            .unwrap();
        let j = s.to_json();
        assert_eq!(j["N"], 4);
        assert_eq!(j["Q0"], 4);
        assert_eq!(Scalar::from_json(&j).unwrap(), s);
    }

    #[test]
    fn prime_power_detection() {
        assert_eq!(prime_power(5), Some((5, 1)));
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
    }
}
