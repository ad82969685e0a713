//! Named, reproducible verification suites: every identity the engine claims
//! is bound to an executable exact check over concrete seeds and fields, with
//! structured, replayable reports.
//!
//! Suites are deterministic: enumeration orders are fixed, pseudo-random
//! instance generators run from hard-coded seeds, and the randomized
//! isomorphism fast path stays off. A failing identity always serializes both
//! sides into the check's witness.

use crate::caps::Caps;
use crate::cc::CCContext;
use crate::error::{Error, Result};
use crate::field::FiniteField;
use crate::hall::{hall_star, psi, HallElement};

use crate::mutation::{transport, QuantumSeed};
use crate::quiver::{compatibility_d, find_lambda, standard, Quiver, SeedMatrices};
use crate::rep::{
    bgp_reflect, ext1_dim, ext_middle_terms, hom_space, indecomposables, is_isomorphic, kronecker,
    p1_points, ReflectDirection, Representation,
};
use crate::rng::SplitMix64;
use crate::scalar::{qbinom, Scalar, ScalarRing};
use crate::torus::{ordered_product, TorusContext, TorusElement};
use serde_json::json;
use std::sync::Arc;

pub const SUITE_NAMES: [&str; 16] = [
    "torus-axioms",
    "qbinom",
    "compat",
    "euler",
    "multi1",
    "multi2",
    "hall-assoc",
    "psi-hom",
    "kronecker-recursion",
    "rank2",
    "rank2-kro",
    "preimages",
    "bgp",
    "ext-drop",
    "expansion",
    "shift-monomials",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Debug, Clone)]
pub struct Check {
    pub id: String,
    pub instance: String,
    pub status: CheckStatus,
    pub witness: Option<serde_json::Value>,
}

impl Check {
    fn pass(id: &str, instance: String) -> Check {
        Check {
            id: id.into(),
            instance,
            status: CheckStatus::Pass,
            witness: None,
        }
    }

    fn fail(id: &str, instance: String, witness: serde_json::Value) -> Check {
        Check {
            id: id.into(),
            instance,
            status: CheckStatus::Fail,
            witness: Some(witness),
        }
    }

    fn inconclusive(id: &str, instance: String, why: &Error) -> Check {
        Check {
            id: id.into(),
            instance,
            status: CheckStatus::Inconclusive,
            witness: Some(json!({ "cap": why.to_string() })),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: String,
    pub params: serde_json::Value,
    pub checks: Vec<Check>,
    pub status: CheckStatus,
}

impl SuiteReport {
    fn assemble(suite: &str, params: serde_json::Value, checks: Vec<Check>) -> SuiteReport {
        let mut status = CheckStatus::Pass;
        for c in &checks {
            match c.status {
                CheckStatus::Fail => {
                    status = CheckStatus::Fail;
                    break;
                }
                CheckStatus::Inconclusive => status = CheckStatus::Inconclusive,
                CheckStatus::Pass => {}
            }
        }
        SuiteReport {
            suite: suite.into(),
            params,
            checks,
            status,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "suite": self.suite,
            "params": self.params,
            "checks": self.checks.iter().map(|c| json!({
                "id": c.id,
                "instance": c.instance,
                "status": c.status,
                "witness": c.witness,
            })).collect::<Vec<_>>(),
            "status": self.status,
        })
    }
}

/// Suite parameters. `fields` overrides the per-seed defaults; the recursion
/// range applies to the rank-2 suites; `suites = None` selects the whole
/// catalog.
#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub caps: Caps,
    pub fields: Option<Vec<(u64, u32)>>,
    pub range_lo: i64,
    pub range_hi: i64,
    pub suites: Option<Vec<String>>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            caps: Caps::default(),
            fields: None,
            range_lo: -6,
            range_hi: 9,
            suites: None,
        }
    }
}

/// The three seed shapes of the verification matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeedSpec {
    Kronecker,
    A2,
    A3,
}

impl SeedSpec {
    pub fn label(&self) -> &'static str {
        match self {
            SeedSpec::Kronecker => "kronecker",
            SeedSpec::A2 => "a2",
            SeedSpec::A3 => "a3",
        }
    }

    /// The principal quiver.
    pub fn principal(&self) -> Arc<Quiver> {
        match self {
            SeedSpec::Kronecker => standard::kronecker(),
            SeedSpec::A2 => standard::a2(),
            SeedSpec::A3 => standard::a3_bipartite(),
        }
    }

    /// The quiver the seed actually runs on: framed for the simply-laced
    /// shapes (their principal matrix is not invertible), bare for the
    /// rank-2 double arrow.
    pub fn ambient(&self) -> Arc<Quiver> {
        match self {
            SeedSpec::Kronecker => standard::kronecker(),
            SeedSpec::A2 => standard::a2().principal_framing().expect("m = n"),
            SeedSpec::A3 => standard::a3_bipartite().principal_framing().expect("m = n"),
        }
    }

    pub fn default_fields(&self) -> Vec<(u64, u32)> {
        match self {
            SeedSpec::Kronecker => vec![(2, 2), (3, 2)],
            SeedSpec::A2 | SeedSpec::A3 => vec![(2, 1), (3, 1), (5, 1)],
        }
    }

    fn catalog_bound(&self) -> Vec<usize> {
        match self {
            SeedSpec::Kronecker => vec![2, 2],
            SeedSpec::A2 => vec![1, 1],
            SeedSpec::A3 => vec![1, 1, 1],
        }
    }
}

fn fields_for(spec: SeedSpec, cfg: &SuiteConfig) -> Vec<(u64, u32)> {
    cfg.fields.clone().unwrap_or_else(|| spec.default_fields())
}

fn field_label(f: &FiniteField) -> String {
    format!("F{}", f.cardinality())
}

/// Named catalog of indecomposables over the ambient quiver (zero-extended
/// for framed seeds).
fn named_catalog(
    spec: SeedSpec,
    field: &FiniteField,
    caps: &Caps,
) -> Result<Vec<(String, Representation)>> {
    let principal = spec.principal();
    let ambient = spec.ambient();
    let _ = caps;
    let mut out = Vec::new();
    match spec {
        SeedSpec::Kronecker => {
            for n in 1..=2usize {
                out.push((
                    format!("M({n})"),
                    kronecker::preprojective(&principal, field, n)?,
                ));
            }
            for n in 1..=2usize {
                out.push((
                    format!("N({n})"),
                    kronecker::preinjective(&principal, field, n)?,
                ));
            }
            for p in p1_points(field) {
                out.push((format!("R({p})"), kronecker::regular(&principal, field, p)?));
            }
        }
        _ => {
            for rep in indecomposables(&principal, field, &spec.catalog_bound())? {
                let name = format!(
                    "[{}]",
                    rep.dims()
                        .iter()
                        .map(|d| d.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                );
                out.push((name, rep));
            }
        }
    }
    if ambient.vertices() != principal.vertices() {
        out = out
            .into_iter()
            .map(|(n, r)| Ok((n, r.extend_to(&ambient)?)))
            .collect::<Result<_>>()?;
    }
    Ok(out)
}

fn torus_json(v: &TorusElement) -> serde_json::Value {
    v.to_json()
}

fn eq_check(id: &str, instance: String, lhs: &TorusElement, rhs: &TorusElement) -> Check {
    if lhs == rhs {
        Check::pass(id, instance)
    } else {
        Check::fail(
            id,
            instance,
            json!({ "lhs": torus_json(lhs), "rhs": torus_json(rhs) }),
        )
    }
}

/// Wraps a per-instance computation: cap errors downgrade to inconclusive,
/// anything else fails with the error as witness.
fn guarded(id: &str, instance: String, f: impl FnOnce() -> Result<Check>) -> Check {
    match f() {
        Ok(c) => c,
        Err(e) if e.is_cap() => Check::inconclusive(id, instance, &e),
        Err(e) => Check::fail(id, instance, json!({ "error": e.to_string() })),
    }
}

pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<SuiteReport> {
    let checks = match name {
        "torus-axioms" => suite_torus_axioms(cfg)?,
        "qbinom" => suite_qbinom(cfg)?,
        "compat" => suite_compat(cfg)?,
        "euler" => suite_euler(cfg)?,
        "multi1" => suite_multi1(cfg)?,
        "multi2" => suite_multi2(cfg)?,
        "hall-assoc" => suite_hall_assoc(cfg)?,
        "psi-hom" => suite_psi_hom(cfg)?,
        "kronecker-recursion" => suite_kronecker_recursion(cfg)?,
        "rank2" => suite_rank2(cfg)?,
        "rank2-kro" => suite_rank2_kro(cfg)?,
        "preimages" => suite_preimages(cfg)?,
        "bgp" => suite_bgp(cfg)?,
        "ext-drop" => suite_ext_drop(cfg)?,
        "expansion" => suite_expansion(cfg)?,
        "shift-monomials" => suite_shift_monomials(cfg)?,
        other => return Err(Error::UnknownSuite(other.into())),
    };
    Ok(SuiteReport::assemble(name, params_json(name, cfg), checks))
}

fn params_json(name: &str, cfg: &SuiteConfig) -> serde_json::Value {
    json!({
        "suite": name,
        "fields": cfg.fields,
        "range": [cfg.range_lo, cfg.range_hi],
        "caps": { "subspaces": cfg.caps.subspaces as u64, "enumeration": cfg.caps.enumeration as u64 },
    })
}

/// Runs the selected suites (the whole catalog by default) over the
/// seed/field matrix.
pub fn run_all(cfg: &SuiteConfig) -> Result<Vec<SuiteReport>> {
    match &cfg.suites {
        None => SUITE_NAMES
            .iter()
            .map(|name| run_suite(name, cfg))
            .collect(),
        Some(list) => list.iter().map(|name| run_suite(name, cfg)).collect(),
    }
}

// ---------------------------------------------------------------------------
// torus-axioms
// ---------------------------------------------------------------------------

fn suite_torus_axioms(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for spec in [SeedSpec::Kronecker, SeedSpec::A2, SeedSpec::A3] {
        let quiver = spec.ambient();
        let mats = SeedMatrices::of(&quiver);
        let (lambda, _) = find_lambda(&mats.btilde)?;
        let ctx = TorusContext::new(lambda.clone(), ScalarRing::free())?;
        let m = quiver.vertices();
        let mut rng = SplitMix64::new(0xA11CE);
        let mut vec_of = |bound: i64| -> Vec<i64> {
            (0..m)
                .map(|_| rng.below((2 * bound + 1) as u64) as i64 - bound)
                .collect()
        };
        // Commutation, inverses, unit.
        for t in 0..10 {
            let e = vec_of(3);
            let f = vec_of(3);
            let xe = TorusElement::basis_monomial(&ctx, &e)?;
            let xf = TorusElement::basis_monomial(&ctx, &f)?;
            let lhs = xe.mul(&xf)?;
            let rhs = xf.mul(&xe)?.scale_u(2 * lambda.pair(&e, &f)?);
            checks.push(eq_check(
                "commutation",
                format!("{}/{}#{t}", spec.label(), "free"),
                &lhs,
                &rhs,
            ));
            let inv =
                TorusElement::basis_monomial(&ctx, &e.iter().map(|x| -x).collect::<Vec<_>>())?;
            checks.push(eq_check(
                "monomial-inverse",
                format!("{}#{t}", spec.label()),
                &xe.mul(&inv)?,
                &TorusElement::one(&ctx),
            ));
        }
        // Associativity on random three-term elements.
        for t in 0..6 {
            let rand_el = |rng: &mut SplitMix64| -> Result<TorusElement> {
                let mut acc = TorusElement::zero(&ctx);
                for _ in 0..3 {
                    let e: Vec<i64> = (0..m).map(|_| rng.below(5) as i64 - 2).collect();
                    let c = rng.below(7) as i64 - 3;
                    acc = acc.add(&TorusElement::monomial(
                        &ctx,
                        &e,
                        Scalar::from_int(ctx.ring(), c),
                    )?)?;
                }
                Ok(acc)
            };
            let a = rand_el(&mut rng)?;
            let b = rand_el(&mut rng)?;
            let c = rand_el(&mut rng)?;
            checks.push(eq_check(
                "associativity",
                format!("{}#{t}", spec.label()),
                &a.mul(&b)?.mul(&c)?,
                &a.mul(&b.mul(&c)?)?,
            ));
        }
        // Ordered products of the initial monomial frame reproduce X^c.
        let vars: Vec<TorusElement> = (0..m)
            .map(|i| {
                let mut e = vec![0i64; m];
                e[i] = 1;
                TorusElement::basis_monomial(&ctx, &e)
            })
            .collect::<Result<_>>()?;
        let bound = if m == 2 { 3i64 } else { 1i64 };
        let mut c = vec![-bound; m];
        loop {
            let val = ordered_product(&ctx, &vars, &lambda, &c)?;
            let mono = TorusElement::basis_monomial(&ctx, &c)?;
            if val != mono {
                checks.push(Check::fail(
                    "frame-monomials",
                    format!("{}/c={c:?}", spec.label()),
                    json!({ "lhs": torus_json(&val), "rhs": torus_json(&mono) }),
                ));
            }
            let mut i = 0;
            loop {
                if i == m {
                    break;
                }
                c[i] += 1;
                if c[i] <= bound {
                    break;
                }
                c[i] = -bound;
                i += 1;
            }
            if i == m {
                break;
            }
        }
        checks.push(Check::pass(
            "frame-monomials",
            format!("{}/box +-{bound}", spec.label()),
        ));
    }
    let _ = cfg;
    Ok(checks)
}

// ---------------------------------------------------------------------------
// qbinom
// ---------------------------------------------------------------------------

fn suite_qbinom(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let _ = cfg;
    let free = ScalarRing::free();
    let mut checks = Vec::new();
    for d in [1u32, 2] {
        for n in 0..=8u32 {
            for k in 0..=n {
                let a = qbinom(n, k, d, &free)?;
                let b = qbinom(n, n - k, d, &free)?;
                let sym_ok = a == b;
                let bar_ok = a.bar()? == a;
                let mut binom = num_rational::BigRational::from_integer(1.into());
                for i in 0..k {
                    binom *= num_rational::BigRational::from_integer((n - i).into());
                    binom /= num_rational::BigRational::from_integer((i + 1).into());
                }
                let spec_ok = a.specialize_at_one()? == binom;
                let inst = format!("n={n},k={k},d={d}");
                if sym_ok && bar_ok && spec_ok {
                    checks.push(Check::pass("qbinom-identities", inst));
                } else {
                    checks.push(Check::fail(
                        "qbinom-identities",
                        inst,
                        json!({
                            "symmetric": sym_ok,
                            "bar_invariant": bar_ok,
                            "specializes": spec_ok,
                            "value": a.to_json(),
                        }),
                    ));
                }
            }
        }
    }
    Ok(checks)
}

// ---------------------------------------------------------------------------
// compat
// ---------------------------------------------------------------------------

fn suite_compat(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for spec in [SeedSpec::Kronecker, SeedSpec::A2, SeedSpec::A3] {
        let quiver = spec.ambient();
        let mats = SeedMatrices::of(&quiver);
        let (lambda, dvec) = find_lambda(&mats.btilde)?;
        let prod = mats.btilde.transpose().mul(&lambda)?;
        let ok = compatibility_d(&prod, quiver.principal()) == Some(dvec.clone());
        checks.push(if ok {
            Check::pass("pair-identity", spec.label().into())
        } else {
            Check::fail(
                "pair-identity",
                spec.label().into(),
                json!({ "product": prod.to_json() }),
            )
        });
        if spec == SeedSpec::Kronecker {
            let ok = lambda.to_rows() == vec![vec![0, 1], vec![-1, 0]] && dvec == vec![2, 2];
            checks.push(if ok {
                Check::pass("kronecker-pair", "Lambda=[[0,1],[-1,0]], D=2I".into())
            } else {
                Check::fail(
                    "kronecker-pair",
                    "expected the example pair".into(),
                    json!({ "Lambda": lambda.to_json(), "D": dvec }),
                )
            });
        } else {
            let ok = dvec.iter().all(|&d| d == 1);
            checks.push(if ok {
                Check::pass("framing-d", format!("{}/D=I", spec.label()))
            } else {
                Check::fail("framing-d", spec.label().into(), json!({ "D": dvec }))
            });
        }
        // Mutation preserves the pair with the same D (and is involutive).
        let seed = QuantumSeed::initial(&quiver, &ScalarRing::free())?;
        let n = quiver.principal();
        for k in 1..=n {
            let inst = format!("{}/mu_{k}", spec.label());
            checks.push(guarded("mutation-preserves-pair", inst.clone(), || {
                let s = seed.mutate(k)?;
                s.validate()?;
                let back = s.mutate(k)?;
                let same = back.btilde() == seed.btilde()
                    && back.lambda() == seed.lambda()
                    && back.cluster() == seed.cluster();
                Ok(if same {
                    Check::pass("mutation-preserves-pair", inst.clone())
                } else {
                    Check::fail(
                        "mutation-preserves-pair",
                        inst.clone(),
                        json!({ "Btilde": back.btilde().to_json() }),
                    )
                })
            }));
        }
        // A short alternating sequence stays compatible.
        let seq: Vec<usize> = (0..4).map(|i| 1 + (i % n)).collect();
        let inst = format!("{}/seq {:?}", spec.label(), seq);
        checks.push(guarded("sequence-compat", inst.clone(), || {
            let s = seed.mutate_seq(&seq)?;
            s.validate()?;
            Ok(Check::pass("sequence-compat", inst.clone()))
        }));
    }
    let _ = cfg;
    Ok(checks)
}

// ---------------------------------------------------------------------------
// euler
// ---------------------------------------------------------------------------

fn suite_euler(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for spec in [SeedSpec::Kronecker, SeedSpec::A2, SeedSpec::A3] {
        let quiver = spec.ambient();
        for (p, k) in [(2u64, 1u32), (3, 1)] {
            let field = FiniteField::new(p, k)?;
            let mut rng = SplitMix64::new(0xE1137 + p);
            for t in 0..8 {
                let dims: Vec<usize> = (0..quiver.vertices())
                    .map(|_| rng.below(3) as usize)
                    .collect();
                let mk = |rng: &mut SplitMix64, dims: &[usize]| -> Result<Representation> {
                    let maps = quiver
                        .arrows()
                        .iter()
                        .map(|&(s, t)| {
                            let mut mtx = crate::field::FMatrix::zeros(dims[t], dims[s]);
                            for i in 0..dims[t] {
                                for j in 0..dims[s] {
                                    mtx[(i, j)] = rng.below(field.cardinality()) as u16;
                                }
                            }
                            mtx
                        })
                        .collect();
                    Representation::new(&quiver, &field, dims.to_vec(), maps)
                };
                let dims2: Vec<usize> = (0..quiver.vertices())
                    .map(|_| rng.below(3) as usize)
                    .collect();
                let m = mk(&mut rng, &dims)?;
                let n = mk(&mut rng, &dims2)?;
                let inst = format!("{}/{}/#{t}", spec.label(), field_label(&field));
                checks.push(guarded("euler-vs-hom-ext", inst.clone(), || {
                    let h = hom_space(&m, &n)?;
                    let euler = quiver.euler(&m.dim_vector(), &n.dim_vector())?;
                    Ok(if h.hom_dim as i64 - h.ext1_dim as i64 == euler {
                        Check::pass("euler-vs-hom-ext", inst.clone())
                    } else {
                        Check::fail(
                            "euler-vs-hom-ext",
                            inst.clone(),
                            json!({
                                "hom": h.hom_dim, "ext": h.ext1_dim, "euler": euler,
                                "dims_m": m.dims(), "dims_n": n.dims(),
                            }),
                        )
                    })
                }));
            }
        }
    }
    let _ = cfg;
    Ok(checks)
}

// ---------------------------------------------------------------------------
// multi1 and its pair sets
// ---------------------------------------------------------------------------

/// The ordered pair set of the multiplication suites: catalog entries with
/// componentwise-bounded dimension sums.
pub fn multi1_pair_set(
    spec: SeedSpec,
    field: &FiniteField,
    caps: &Caps,
) -> Result<Vec<(String, Representation, Representation)>> {
    let catalog = named_catalog(spec, field, caps)?;
    let ambient = spec.ambient();
    let bound: Vec<i64> = match spec {
        SeedSpec::Kronecker => vec![3, 3],
        SeedSpec::A2 => vec![2, 2],
        SeedSpec::A3 => vec![2, 2, 2],
    };
    let n = ambient.principal();
    let mut out = Vec::new();
    for (nm, m) in &catalog {
        for (nn, nrep) in &catalog {
            let sum: Vec<i64> = m
                .dim_vector()
                .iter()
                .zip(nrep.dim_vector())
                .map(|(a, b)| a + b)
                .collect();
            if sum[..n].iter().zip(&bound).all(|(s, b)| s <= b) {
                out.push((format!("({nm},{nn})"), m.clone(), nrep.clone()));
            }
        }
    }
    Ok(out)
}

/// Left side `|k|^{[M,N]^1} X_M X_N`, right side
/// `u^{Lambda(fm, fn)} sum_E eps^E X_E`.
fn multi1_sides(
    ctx: &CCContext,
    m: &Representation,
    n: &Representation,
) -> Result<(TorusElement, TorusElement)> {
    let ext = ext1_dim(m, n)?;
    let lhs = ctx
        .character(m)?
        .mul(&ctx.character(n)?)?
        .scale(&ctx.counting_power(ext as i64))?;
    let table = ext_middle_terms(m, n, ctx.caps())?;
    let nprin = ctx.quiver().principal();
    let fm = ctx.matrices().i_minus_rtr.apply(&m.dim_vector()[..nprin])?;
    let fn_ = ctx.matrices().i_minus_rtr.apply(&n.dim_vector()[..nprin])?;
    let twist = ctx.lambda().pair(&fm, &fn_)?;
    let mut rhs = TorusElement::zero(ctx.torus());
    for (e, eps) in &table.entries {
        let xe = ctx.character(e)?;
        rhs = rhs.add(&xe.scale(&Scalar::from_u128(ctx.ring(), *eps))?)?;
    }
    Ok((lhs, rhs.scale_u(twist)))
}

fn suite_multi1(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for spec in [SeedSpec::Kronecker, SeedSpec::A2, SeedSpec::A3] {
        let fields = match spec {
            SeedSpec::Kronecker => vec![(2u64, 2u32)],
            _ => fields_for(spec, cfg),
        };
        for (p, k) in fields {
            let field = FiniteField::new(p, k)?;
            let ctx = CCContext::new(&spec.ambient(), &field, &cfg.caps)?;
            for (name, m, n) in multi1_pair_set(spec, &field, &cfg.caps)? {
                let inst = format!("{}/{}/{}", spec.label(), field_label(&field), name);
                checks.push(guarded("multi1", inst.clone(), || {
                    let (lhs, rhs) = multi1_sides(&ctx, &m, &n)?;
                    Ok(eq_check("multi1", inst.clone(), &lhs, &rhs))
                }));
            }
        }
    }
    Ok(checks)
}

// ---------------------------------------------------------------------------
// multi2
// ---------------------------------------------------------------------------

fn suite_multi2(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let spec = SeedSpec::Kronecker;
    let field = FiniteField::new(2, 2)?;
    let ctx = CCContext::new(&spec.ambient(), &field, &cfg.caps)?;
    let quiver = spec.ambient();
    let catalog = named_catalog(spec, &field, &cfg.caps)?;
    for i_idx in 1..=quiver.vertices() {
        let inj = Representation::injective(&quiver, &field, i_idx)?;
        for (name, m) in &catalog {
            let inst = format!("kronecker/F4/({name},I{i_idx})");
            let m = m.clone();
            let inj = inj.clone();
            let ctx = ctx.clone();
            checks.push(guarded("multi2", inst.clone(), || {
                let hom = hom_space(&m, &inj)?;
                if hom.hom_dim > 6 {
                    return Ok(Check::pass("multi2", format!("{inst} skipped ([M,I] > 6)")));
                }
                let lhs = ctx
                    .character(&m)?
                    .mul(&ctx.character_shifted(&Representation::zero(&quiver, &field), &inj)?)?
                    .scale(&ctx.counting_power(hom.hom_dim as i64))?;
                let strata = crate::rep::hom_to_injective_strata(&m, &inj, ctx.caps())?;
                let nprin = quiver.principal();
                let fm = ctx.matrices().i_minus_rtr.apply(&m.dim_vector()[..nprin])?;
                let soc: Vec<i64> = inj.soc_dims().iter().map(|&x| -x).collect();
                let twist = ctx.lambda().pair(&fm, &soc)?;
                let mut rhs = TorusElement::zero(ctx.torus());
                for ((b, iprime), count) in &strata.entries {
                    let xb = ctx.character_shifted(b, iprime)?;
                    rhs = rhs.add(&xb.scale(&Scalar::from_u128(ctx.ring(), *count))?)?;
                }
                let rhs = rhs.scale_u(twist);
                // The strata counts always fill the whole Hom space.
                let total_ok =
                    strata.total() == (field.cardinality() as u128).pow(hom.hom_dim as u32);
                if !total_ok {
                    return Ok(Check::fail(
                        "multi2",
                        inst.clone(),
                        json!({ "strata_total": strata.total().to_string() }),
                    ));
                }
                Ok(eq_check("multi2", inst.clone(), &lhs, &rhs))
            }));
        }
    }
    Ok(checks)
}

// ---------------------------------------------------------------------------
// hall-assoc
// ---------------------------------------------------------------------------

fn suite_hall_assoc(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let spec = SeedSpec::Kronecker;
    let field = FiniteField::new(2, 2)?;
    let ctx = CCContext::new(&spec.ambient(), &field, &cfg.caps)?;
    let catalog = named_catalog(spec, &field, &cfg.caps)?;
    let mut triples = Vec::new();
    for (na, a) in &catalog {
        for (nb, b) in &catalog {
            for (nc, c) in &catalog {
                if a.total_dim() + b.total_dim() + c.total_dim() <= 4 {
                    triples.push((format!("({na},{nb},{nc})"), a.clone(), b.clone(), c.clone()));
                }
            }
        }
    }
    for (name, a, b, c) in triples {
        let inst = format!("kronecker/F4/{name}");
        let ctx = ctx.clone();
        checks.push(guarded("hall-assoc", inst.clone(), || {
            let da = HallElement::delta(&ctx, a.clone())?;
            let db = HallElement::delta(&ctx, b.clone())?;
            let dc = HallElement::delta(&ctx, c.clone())?;
            let left = hall_star(&hall_star(&da, &db)?, &dc)?;
            let right = hall_star(&da, &hall_star(&db, &dc)?)?;
            Ok(if left.equals(&right)? {
                Check::pass("hall-assoc", inst.clone())
            } else {
                Check::fail(
                    "hall-assoc",
                    inst.clone(),
                    json!({ "lhs": left.to_json(), "rhs": right.to_json() }),
                )
            })
        }));
        // Bilinearity of the twist exponent phi on the dimension vectors.
        let (av, bv, cv) = (a.dim_vector(), b.dim_vector(), c.dim_vector());
        let phi = |x: &[i64], y: &[i64]| -> Result<i64> {
            let nprin = ctx.quiver().principal();
            let fx = ctx.matrices().i_minus_rtr.apply(&x[..nprin])?;
            let fy = ctx.matrices().i_minus_rtr.apply(&y[..nprin])?;
            // 2*phi to stay integral: Lambda(fx, fy) + 2 d <x, y>.
            Ok(ctx.lambda().pair(&fx, &fy)? + 2 * ctx.d() * ctx.quiver().euler(x, y)?)
        };
        let sum_ab: Vec<i64> = av.iter().zip(&bv).map(|(x, y)| x + y).collect();
        let sum_bc: Vec<i64> = bv.iter().zip(&cv).map(|(x, y)| x + y).collect();
        let lhs = phi(&av, &bv)? + phi(&sum_ab, &cv)?;
        let rhs = phi(&av, &sum_bc)? + phi(&bv, &cv)?;
        let inst2 = format!("kronecker/F4/phi{name}");
        checks.push(if lhs == rhs {
            Check::pass("phi-bilinear", inst2)
        } else {
            Check::fail("phi-bilinear", inst2, json!({ "lhs": lhs, "rhs": rhs }))
        });
    }
    Ok(checks)
}

// ---------------------------------------------------------------------------
// psi-hom
// ---------------------------------------------------------------------------

fn suite_psi_hom(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for spec in [SeedSpec::Kronecker, SeedSpec::A2, SeedSpec::A3] {
        let fields = match spec {
            SeedSpec::Kronecker => vec![(2u64, 2u32)],
            // One field per simply-laced shape keeps the suite quick; multi1
            // already runs the full field matrix.
            _ => vec![fields_for(spec, cfg)[0]],
        };
        for (p, k) in fields {
            let field = FiniteField::new(p, k)?;
            let ctx = CCContext::new(&spec.ambient(), &field, &cfg.caps)?;
            for (name, m, n) in multi1_pair_set(spec, &field, &cfg.caps)? {
                let inst = format!("{}/{}/{}", spec.label(), field_label(&field), name);
                let ctx = ctx.clone();
                checks.push(guarded("psi-hom", inst.clone(), || {
                    let dm = HallElement::delta(&ctx, m.clone())?;
                    let dn = HallElement::delta(&ctx, n.clone())?;
                    let lhs = psi(&hall_star(&dm, &dn)?)?;
                    let rhs = psi(&dm)?.mul(&psi(&dn)?)?;
                    Ok(eq_check("psi-hom", inst.clone(), &lhs, &rhs))
                }));
            }
        }
    }
    Ok(checks)
}

// ---------------------------------------------------------------------------
// rank-2 engine helpers
// ---------------------------------------------------------------------------

/// Cluster variables X_m of the rank-2 double-arrow seed, computed by
/// alternating mutation from the initial seed, indexed by m in
/// `[lo, hi]` with `X_1, X_2` the initial variables.
pub fn kronecker_variables(
    ring: &ScalarRing,
    lo: i64,
    hi: i64,
) -> Result<Vec<(i64, TorusElement)>> {
    let quiver = standard::kronecker();
    let seed = QuantumSeed::initial(&quiver, ring)?;
    let mut out = vec![
        (1i64, seed.variable(1).clone()),
        (2i64, seed.variable(2).clone()),
    ];
    // Forward: mu_1 from (X1, X2) yields X3, then alternate.
    let mut s = seed.clone();
    let mut dir = 1usize;
    let mut m = 3i64;
    while m <= hi {
        s = s.mutate(dir)?;
        out.push((m, s.variable(dir).clone()));
        dir = 3 - dir;
        m += 1;
    }
    // Backward: mu_2 from (X1, X2) yields X0, then alternate.
    let mut s = seed;
    let mut dir = 2usize;
    let mut m = 0i64;
    while m >= lo {
        s = s.mutate(dir)?;
        out.push((m, s.variable(dir).clone()));
        dir = 3 - dir;
        m -= 1;
    }
    out.sort_by_key(|(m, _)| *m);
    Ok(out)
}

fn suite_kronecker_recursion(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let ring = ScalarRing::free();
    let vars = kronecker_variables(&ring, cfg.range_lo, cfg.range_hi)?;
    let ctx = vars[0].1.context().clone();
    let one = TorusElement::one(&ctx);
    let mut checks = Vec::new();
    for w in vars.windows(3) {
        let (m0, x0) = &w[0];
        let (_, x1) = &w[1];
        let (_, x2) = &w[2];
        let inst = format!("X_{} X_{} = q X_{}^2 + 1", m0, m0 + 2, m0 + 1);
        let lhs = x0.mul(x2)?;
        let rhs = x1.pow(2)?.scale_u(2).add(&one)?;
        checks.push(eq_check("recursion", inst, &lhs, &rhs));
    }
    Ok(checks)
}

fn suite_rank2(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let quiver = standard::kronecker();
    let free_vars = kronecker_variables(&ScalarRing::free(), -4, 7)?;
    for (p, k) in cfg.fields.clone().unwrap_or_else(|| vec![(2, 2), (3, 2)]) {
        let field = FiniteField::new(p, k)?;
        let ctx = CCContext::new(&quiver, &field, &cfg.caps)?;
        for &(m, ref xm) in &free_vars {
            if (1..=2).contains(&m) || !(-4..=7).contains(&m) {
                continue;
            }
            let inst = format!("{}/X_{m} = X_V({m})", field_label(&field));
            let xm = xm.clone();
            let ctx2 = ctx.clone();
            let quiver = quiver.clone();
            let field = field.clone();
            checks.push(guarded("rank2", inst.clone(), || {
                let v = kronecker::v_module(&quiver, &field, m)?;
                let lhs = xm.reduce_to(ctx2.torus())?;
                let rhs = ctx2.character(&v)?;
                Ok(eq_check("rank2", inst.clone(), &lhs, &rhs))
            }));
        }
    }
    Ok(checks)
}

fn suite_rank2_kro(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let quiver = standard::kronecker();
    let free_vars = kronecker_variables(&ScalarRing::free(), -4, 7)?;
    for (p, k) in cfg.fields.clone().unwrap_or_else(|| vec![(2, 2), (3, 2)]) {
        let field = FiniteField::new(p, k)?;
        let ctx = CCContext::new(&quiver, &field, &cfg.caps)?;
        let torus = ctx.torus().clone();
        let reduced: std::collections::BTreeMap<i64, TorusElement> = free_vars
            .iter()
            .map(|(m, x)| Ok((*m, x.reduce_to(&torus)?)))
            .collect::<Result<_>>()?;
        for point in p1_points(&field) {
            let r = kronecker::regular(&quiver, &field, point)?;
            let xr = ctx.character(&r)?;
            for n in -3..=6i64 {
                let inst = format!(
                    "{}/X_{n} X_R({point}) = q^-1/2 X_{} + q^1/2 X_{}",
                    field_label(&field),
                    n - 1,
                    n + 1
                );
                let lhs = reduced[&n].mul(&xr)?;
                let rhs = reduced[&(n - 1)]
                    .scale_u(-1)
                    .add(&reduced[&(n + 1)].scale_u(1))?;
                checks.push(eq_check("rank2-kro", inst, &lhs, &rhs));
            }
        }
    }
    Ok(checks)
}

fn suite_preimages(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let quiver = standard::kronecker();
    for (p, k) in cfg.fields.clone().unwrap_or_else(|| vec![(2, 2), (3, 2)]) {
        let field = FiniteField::new(p, k)?;
        let ctx = CCContext::new(&quiver, &field, &cfg.caps)?;
        let ring = ctx.ring().clone();
        let x1 = TorusElement::basis_monomial(ctx.torus(), &[1, 0])?;
        let x2 = TorusElement::basis_monomial(ctx.torus(), &[0, 1])?;
        for point in p1_points(&field) {
            let r = kronecker::regular(&quiver, &field, point)?;
            // X1 = Psi(q^{-1/2} d_{V(0)} * d_{R} - q^{-1} d_{V(-1)}).
            let inst1 = format!("{}/X1 preimage via R({point})", field_label(&field));
            {
                let ctx = ctx.clone();
                let quiver = quiver.clone();
                let field = field.clone();
                let ring = ring.clone();
                let r = r.clone();
                let x1 = x1.clone();
                checks.push(guarded("preimage-x1", inst1.clone(), || {
                    let v0 = HallElement::delta(&ctx, kronecker::v_module(&quiver, &field, 0)?)?;
                    let dr = HallElement::delta(&ctx, r.clone())?;
                    let vm1 = HallElement::delta(&ctx, kronecker::v_module(&quiver, &field, -1)?)?;
                    let expr = hall_star(&v0, &dr)?
                        .scale(&Scalar::u_power(&ring, -1))?
                        .sub(&vm1.scale(&Scalar::u_power(&ring, -2))?)?;
                    Ok(eq_check("preimage-x1", inst1.clone(), &psi(&expr)?, &x1))
                }));
            }
            // X2 = Psi(q^{1/2} d_{V(3)} * d_{R} - q d_{V(4)}).
            let inst2 = format!("{}/X2 preimage via R({point})", field_label(&field));
            {
                let ctx = ctx.clone();
                let quiver = quiver.clone();
                let field = field.clone();
                let ring = ring.clone();
                let x2 = x2.clone();
                checks.push(guarded("preimage-x2", inst2.clone(), || {
                    let v3 = HallElement::delta(&ctx, kronecker::v_module(&quiver, &field, 3)?)?;
                    let dr = HallElement::delta(&ctx, r.clone())?;
                    let v4 = HallElement::delta(&ctx, kronecker::v_module(&quiver, &field, 4)?)?;
                    let expr = hall_star(&v3, &dr)?
                        .scale(&Scalar::u_power(&ring, 1))?
                        .sub(&v4.scale(&Scalar::u_power(&ring, 2))?)?;
                    Ok(eq_check("preimage-x2", inst2.clone(), &psi(&expr)?, &x2))
                }));
            }
        }
    }
    Ok(checks)
}

// ---------------------------------------------------------------------------
// bgp
// ---------------------------------------------------------------------------

fn suite_bgp(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let instances: Vec<(SeedSpec, usize)> = vec![
        (SeedSpec::Kronecker, 2),
        (SeedSpec::A3, 1),
        (SeedSpec::A3, 3),
    ];
    for (spec, sink) in instances {
        for (p, k) in cfg.fields.clone().unwrap_or_else(|| vec![(2, 1), (3, 1)]) {
            let field = FiniteField::new(p, k)?;
            let ambient = spec.ambient();
            let ctx = CCContext::new(&ambient, &field, &cfg.caps)?;
            let seed = QuantumSeed::initial(&ambient, ctx.ring())?;
            let mutated = seed.mutate(sink)?;
            let reflected = ambient.reflect(sink)?;
            let ctx_reflected = CCContext::new(&reflected, &field, &cfg.caps)?;
            // The reflected quiver's exchange matrix is the mutated one.
            if ctx_reflected.matrices().btilde != *mutated.btilde() {
                checks.push(Check::fail(
                    "bgp-matrix",
                    format!("{}/sink {sink}", spec.label()),
                    json!({
                        "reflected": ctx_reflected.matrices().btilde.to_json(),
                        "mutated": mutated.btilde().to_json(),
                    }),
                ));
                continue;
            }
            let catalog = named_catalog(spec, &field, &cfg.caps)?;
            let simple_at_sink = Representation::simple(&ambient, &field, sink)?;
            for (name, m) in catalog {
                let inst = format!(
                    "{}/{}/sink {sink}/{name}",
                    spec.label(),
                    field_label(&field)
                );
                let ctx = ctx.clone();
                let ctx_reflected = ctx_reflected.clone();
                let mutated = mutated.clone();
                let simple_at_sink = simple_at_sink.clone();
                checks.push(guarded("bgp-transport", inst.clone(), || {
                    let expr = if is_isomorphic(&m, &simple_at_sink, ctx.caps(), None)? {
                        // R_i^+(S_i) = P_i[1], whose character is the plain
                        // monomial at the sink.
                        let mut e = vec![0i64; mutated.rank()];
                        e[sink - 1] = 1;
                        TorusElement::basis_monomial(ctx_reflected.torus(), &e)?
                    } else {
                        let (_, image) = bgp_reflect(&m, sink, ReflectDirection::Plus)?;
                        ctx_reflected.character(&image)?
                    };
                    let terms: Vec<(Vec<i64>, Scalar)> = expr
                        .terms()
                        .map(|(e, s)| Ok((e.to_vec(), s.reduce_to(ctx.ring())?)))
                        .collect::<Result<_>>()?;
                    let transported = transport(mutated.cluster(), mutated.lambda(), &terms)?;
                    let expected = ctx.character(&m)?;
                    Ok(eq_check(
                        "bgp-transport",
                        inst.clone(),
                        &transported,
                        &expected,
                    ))
                }));
            }
            // Shifted projectives away from the sink are fixed: transporting
            // the bare monomial returns the unchanged cluster variable.
            for j in 1..=ambient.principal() {
                if j == sink {
                    continue;
                }
                let inst = format!(
                    "{}/{}/sink {sink}/P{j}[1]",
                    spec.label(),
                    field_label(&field)
                );
                let mut e = vec![0i64; mutated.rank()];
                e[j - 1] = 1;
                let expr = vec![(e.clone(), Scalar::one(ctx.ring()))];
                let t = transport(mutated.cluster(), mutated.lambda(), &expr)?;
                let expected = TorusElement::basis_monomial(ctx.torus(), &e)?;
                checks.push(eq_check("bgp-fixed-shift", inst, &t, &expected));
            }
        }
    }
    Ok(checks)
}

// ---------------------------------------------------------------------------
// ext-drop
// ---------------------------------------------------------------------------

fn suite_ext_drop(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for spec in [SeedSpec::Kronecker, SeedSpec::A2, SeedSpec::A3] {
        let (p, k) = match spec {
            SeedSpec::Kronecker => (2u64, 2u32),
            _ => (3, 1),
        };
        let field = FiniteField::new(p, k)?;
        for (name, m, n) in multi1_pair_set(spec, &field, &cfg.caps)? {
            let inst = format!("{}/{}/{}", spec.label(), field_label(&field), name);
            checks.push(guarded("ext-drop", inst.clone(), || {
                let table = ext_middle_terms(&m, &n, &cfg.caps)?;
                let split = n.direct_sum(&m)?;
                let bound = ext1_dim(&split, &split)?;
                let mut bad = Vec::new();
                for (e, _) in &table.entries {
                    if is_isomorphic(e, &split, &cfg.caps, None)? {
                        continue;
                    }
                    let self_ext = ext1_dim(e, e)?;
                    if self_ext >= bound {
                        bad.push(json!({
                            "middle_dims": e.dims(),
                            "self_ext": self_ext,
                            "split_self_ext": bound,
                        }));
                    }
                }
                Ok(if bad.is_empty() {
                    Check::pass("ext-drop", inst.clone())
                } else {
                    Check::fail("ext-drop", inst.clone(), json!(bad))
                })
            }));
        }
    }
    Ok(checks)
}

// ---------------------------------------------------------------------------
// expansion
// ---------------------------------------------------------------------------

/// Expands `X_{L_1} ... X_{L_r}` through iterated multi1 into a combination
/// of characters of modules; returns the class table together with the
/// accumulated u-power of the all-split branch.
fn expand_product(
    ctx: &CCContext,
    factors: &[Representation],
) -> Result<(Vec<(Representation, Scalar)>, i64)> {
    let mut terms: Vec<(Representation, Scalar)> =
        vec![(factors[0].clone(), Scalar::one(ctx.ring()))];
    let mut split_power = 0i64;
    let mut split_partial = factors[0].clone();
    let nprin = ctx.quiver().principal();
    for next in &factors[1..] {
        let mut out: Vec<(Representation, Scalar)> = Vec::new();
        for (w, c) in &terms {
            let fw = ctx.matrices().i_minus_rtr.apply(&w.dim_vector()[..nprin])?;
            let fl = ctx
                .matrices()
                .i_minus_rtr
                .apply(&next.dim_vector()[..nprin])?;
            let twist = ctx.lambda().pair(&fw, &fl)?;
            let ext = ext1_dim(w, next)?;
            let factor = Scalar::u_power(ctx.ring(), twist - 2 * ctx.d() * ext as i64);
            let table = ext_middle_terms(w, next, ctx.caps())?;
            for (e, eps) in table.entries {
                let coeff = c.mul(&factor)?.mul(&Scalar::from_u128(ctx.ring(), eps))?;
                match out
                    .iter_mut()
                    .find(|(r, _)| matches!(is_isomorphic(r, &e, ctx.caps(), None), Ok(true)))
                {
                    Some((_, acc)) => *acc = acc.add(&coeff)?,
                    None => out.push((e, coeff)),
                }
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        terms = out;
        // Track the predicted all-split branch exponent.
        let fw = ctx
            .matrices()
            .i_minus_rtr
            .apply(&split_partial.dim_vector()[..nprin])?;
        let fl = ctx
            .matrices()
            .i_minus_rtr
            .apply(&next.dim_vector()[..nprin])?;
        split_power +=
            ctx.lambda().pair(&fw, &fl)? - 2 * ctx.d() * ext1_dim(&split_partial, next)? as i64;
        split_partial = split_partial.direct_sum(next)?;
    }
    Ok((terms, split_power))
}

fn suite_expansion(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let spec = SeedSpec::Kronecker;
    let field = FiniteField::new(2, 2)?;
    let ctx = CCContext::new(&spec.ambient(), &field, &cfg.caps)?;
    let catalog = named_catalog(spec, &field, &cfg.caps)?;
    let mut lists: Vec<(String, Vec<Representation>)> = Vec::new();
    for (na, a) in &catalog {
        for (nb, b) in &catalog {
            let sum: Vec<i64> = a
                .dim_vector()
                .iter()
                .zip(b.dim_vector())
                .map(|(x, y)| x + y)
                .collect();
            if sum.iter().all(|&s| s <= 3) {
                lists.push((format!("({na},{nb})"), vec![a.clone(), b.clone()]));
            }
            for (nc, c) in &catalog {
                if a.total_dim() + b.total_dim() + c.total_dim() <= 4 {
                    lists.push((
                        format!("({na},{nb},{nc})"),
                        vec![a.clone(), b.clone(), c.clone()],
                    ));
                }
            }
        }
    }
    for (name, factors) in lists {
        let inst = format!("kronecker/F4/{name}");
        let ctx = ctx.clone();
        checks.push(guarded("expansion", inst.clone(), || {
            let (terms, split_power) = expand_product(&ctx, &factors)?;
            let mut full = factors[0].clone();
            for f in &factors[1..] {
                full = full.direct_sum(f)?;
            }
            let full_self_ext = ext1_dim(&full, &full)?;
            // (1) The top class carries exactly the predicted u-power.
            let top_ok = match terms
                .iter()
                .find(|(r, _)| matches!(is_isomorphic(r, &full, ctx.caps(), None), Ok(true)))
            {
                Some((_, c)) => *c == Scalar::u_power(ctx.ring(), split_power),
                None => false,
            };
            // (2) Every other class has strictly smaller self-extension.
            let mut bad = Vec::new();
            for (r, _) in &terms {
                if is_isomorphic(r, &full, ctx.caps(), None)? {
                    continue;
                }
                let se = ext1_dim(r, r)?;
                if se >= full_self_ext {
                    bad.push(json!({ "dims": r.dims(), "self_ext": se }));
                }
            }
            // (3) The expansion, pushed through psi-characters, reproduces
            // the torus product (termination is implied by (2)).
            let mut rhs = TorusElement::zero(ctx.torus());
            for (r, c) in &terms {
                rhs = rhs.add(&ctx.character(r)?.scale(c)?)?;
            }
            let mut lhs = TorusElement::one(ctx.torus());
            for f in &factors {
                lhs = lhs.mul(&ctx.character(f)?)?;
            }
            Ok(if top_ok && bad.is_empty() && lhs == rhs {
                Check::pass("expansion", inst.clone())
            } else {
                Check::fail(
                    "expansion",
                    inst.clone(),
                    json!({
                        "top_coefficient_is_power": top_ok,
                        "violations": bad,
                        "product_matches": lhs == rhs,
                    }),
                )
            })
        }));
    }
    Ok(checks)
}

// ---------------------------------------------------------------------------
// shift-monomials
// ---------------------------------------------------------------------------

fn suite_shift_monomials(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for spec in [SeedSpec::Kronecker, SeedSpec::A2, SeedSpec::A3] {
        let (p, k) = match spec {
            SeedSpec::Kronecker => (2u64, 2u32),
            _ => (2, 1),
        };
        let field = FiniteField::new(p, k)?;
        let quiver = spec.ambient();
        let ctx = CCContext::new(&quiver, &field, &cfg.caps)?;
        let zero = Representation::zero(&quiver, &field);
        for i in 1..=quiver.vertices() {
            let inst = format!("{}/{}/I{i}", spec.label(), field_label(&field));
            let inj = Representation::injective(&quiver, &field, i)?;
            let x = ctx.character_shifted(&zero, &inj)?;
            let soc = inj.soc_dims();
            let expected = TorusElement::basis_monomial(ctx.torus(), &soc)?;
            // soc(I_i) = S_i, so this is the i-th initial variable.
            let mut ei = vec![0i64; quiver.vertices()];
            ei[i - 1] = 1;
            checks.push(if soc == ei {
                eq_check("shift-monomial", inst, &x, &expected)
            } else {
                Check::fail(
                    "shift-monomial",
                    inst,
                    json!({ "soc": soc, "expected": ei }),
                )
            });
        }
    }
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::imat::IMat;

    #[test]
    fn unknown_suite_is_an_error() {
        assert!(matches!(
            run_suite("no-such-suite", &SuiteConfig::default()),
            Err(Error::UnknownSuite(_))
        ));
    }

    #[test]
    fn empty_config_gives_empty_report_list() {
        let cfg = SuiteConfig {
            suites: Some(vec![]),
            ..SuiteConfig::default()
        };
        assert!(run_all(&cfg).unwrap().is_empty());
    }

    #[test]
    fn tight_caps_yield_inconclusive_not_fail() {
        let cfg = SuiteConfig {
            caps: Caps::default().with_enumeration(1).with_subspaces(1),
            ..SuiteConfig::default()
        };
        let rep = run_suite("multi1", &cfg).unwrap();
        assert_eq!(rep.status, CheckStatus::Inconclusive);
        assert!(rep.checks.iter().all(|c| c.status != CheckStatus::Fail));
        assert!(rep
            .checks
            .iter()
            .any(|c| c.status == CheckStatus::Inconclusive));
    }

    #[test]
    fn fast_suites_pass() {
        for name in ["qbinom", "compat", "euler", "shift-monomials", "preimages"] {
            let rep = run_suite(name, &SuiteConfig::default()).unwrap();
            assert!(rep.passed(), "{name} failed: {:?}", rep.to_json());
        }
    }

    #[test]
    fn report_json_shape() {
        let rep = run_suite("qbinom", &SuiteConfig::default()).unwrap();
        let j = rep.to_json();
        assert_eq!(j["suite"], "qbinom");
        assert_eq!(j["status"], "pass");
        assert!(j["checks"].as_array().unwrap().len() >= 90);
    }

    #[test]
    fn failing_identity_serializes_both_sides() {
        // Force a failure through the public check plumbing.
        let ring = ScalarRing::free();
        let lambda = IMat::from_rows(vec![vec![0, 1], vec![-1, 0]]).unwrap();
        let ctx = TorusContext::new(lambda, ring).unwrap();
        let one = TorusElement::one(&ctx);
        let x = TorusElement::basis_monomial(&ctx, &[1, 0]).unwrap();
        let c = eq_check("demo", "demo".into(), &one, &x);
        assert_eq!(c.status, CheckStatus::Fail);
        let w = c.witness.unwrap();
        assert!(w.get("lhs").is_some() && w.get("rhs").is_some());
    }
}
