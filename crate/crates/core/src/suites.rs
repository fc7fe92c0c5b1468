//! Named verification suites over the whole algebra stack.
//!
//! - Ten suites: identities, diamond, center, morphisms, gwa, virasoro,
//!   fock, oscillator, bmodule, inner; `all` runs them in that order.
//! - Default bounds match the shipped verification battery, so a full run
//!   covers the same ground as the acceptance tests.
//! - Checks execute in parallel under an optional thread cap; the report
//!   keeps collection order regardless of completion order.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::freealg::{check_overlaps, hpq_rules, Letter, Word};
use crate::gwa::{apq_indep_gwa, aprs_as_gwa, hpq_as_gwa, tensor_power, RelationCheck};
use crate::hpq::{AlgebraMorphism, HpqRing, PBWElement, PowerSide};
use crate::localize::{LocalElement, LocalRing};
use crate::params::{
    pq_factorial, pq_number, QuotientRing, Scalar, SpecValue, Specialization, TScalar, UniPoly,
};
use crate::report::{CheckEntry, VerificationReport};
use crate::reps::{build_oscillator, BModule, FockSpace, ZModuleVector};

/// Per-suite residual tolerance for the floating-point oscillator checks.
const OSCILLATOR_TOL: f64 = 1e-9;
/// Tolerance for the r-th power relation, which stacks r matrix products.
const POWER_TOL: f64 = 1e-8;
/// Seed base for the reproducible random-descent battery.
const DESCENT_SEED: u64 = 0x0de5_ce17;

/// The named verification suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuiteName {
    Identities,
    Diamond,
    Center,
    Morphisms,
    Gwa,
    Virasoro,
    Fock,
    Oscillator,
    Bmodule,
    Inner,
    All,
}

impl SuiteName {
    /// All concrete suites in canonical run order.
    pub fn all() -> [SuiteName; 10] {
        [
            SuiteName::Identities,
            SuiteName::Diamond,
            SuiteName::Center,
            SuiteName::Morphisms,
            SuiteName::Gwa,
            SuiteName::Virasoro,
            SuiteName::Fock,
            SuiteName::Oscillator,
            SuiteName::Bmodule,
            SuiteName::Inner,
        ]
    }

    fn label(self) -> &'static str {
        match self {
            SuiteName::Identities => "identities",
            SuiteName::Diamond => "diamond",
            SuiteName::Center => "center",
            SuiteName::Morphisms => "morphisms",
            SuiteName::Gwa => "gwa",
            SuiteName::Virasoro => "virasoro",
            SuiteName::Fock => "fock",
            SuiteName::Oscillator => "oscillator",
            SuiteName::Bmodule => "bmodule",
            SuiteName::Inner => "inner",
            SuiteName::All => "all",
        }
    }
}

impl fmt::Display for SuiteName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

impl FromStr for SuiteName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "identities" => Ok(SuiteName::Identities),
            "diamond" => Ok(SuiteName::Diamond),
            "center" => Ok(SuiteName::Center),
            "morphisms" => Ok(SuiteName::Morphisms),
            "gwa" => Ok(SuiteName::Gwa),
            "virasoro" => Ok(SuiteName::Virasoro),
            "fock" => Ok(SuiteName::Fock),
            "oscillator" => Ok(SuiteName::Oscillator),
            "bmodule" => Ok(SuiteName::Bmodule),
            "inner" => Ok(SuiteName::Inner),
            "all" => Ok(SuiteName::All),
            other => Err(format!("unknown suite {other:?}")),
        }
    }
}

/// Choice of z-x coefficient for the overlap-confluence check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwistChoice {
    /// z x = p^{-1} x z, the relation the algebra actually carries.
    InverseP,
    /// z x = p x z, which breaks confluence at the word zyx.
    EqualP,
}

impl FromStr for TwistChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "pinv" | "p^-1" | "p-inverse" => Ok(TwistChoice::InverseP),
            "p" => Ok(TwistChoice::EqualP),
            other => Err(format!("pprime must be pinv or p, found {other:?}")),
        }
    }
}

/// Bounds for suite grids; defaults reproduce the acceptance battery.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteBounds {
    /// Fock monomial degree bound.
    pub degree: u32,
    /// Reorder-identity exponent range.
    pub range: i64,
    /// Virasoro index window for brackets and operator checks.
    pub virasoro: i64,
    /// Module basis window for annihilation checks.
    pub window: i64,
    /// Oscillator matrix dimension.
    pub matrix: usize,
}

impl Default for SuiteBounds {
    fn default() -> Self {
        SuiteBounds {
            degree: 6,
            range: 30,
            virasoro: 8,
            window: 20,
            matrix: 64,
        }
    }
}

/// Everything needed to run one suite (or all of them).
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub suite: SuiteName,
    pub mode: Specialization,
    pub bounds: SuiteBounds,
    pub pprime: Option<TwistChoice>,
    /// Worker thread cap; 0 uses the global default.
    pub jobs: usize,
}

impl SuiteConfig {
    pub fn new(suite: SuiteName) -> Self {
        SuiteConfig {
            suite,
            mode: Specialization::Generic,
            bounds: SuiteBounds::default(),
            pprime: None,
            jobs: 0,
        }
    }

    /// Reject impossible bounds and suite/mode combinations.
    pub fn validate(&self) -> Result<(), String> {
        let b = &self.bounds;
        if b.degree < 1 || b.range < 1 || b.virasoro < 1 || b.window < 1 {
            return Err("bounds must be positive".to_string());
        }
        if b.matrix < 3 {
            return Err("matrix size must be at least 3".to_string());
        }
        if self.pprime.is_some() && self.suite != SuiteName::Diamond {
            return Err("pprime applies only to the diamond suite".to_string());
        }
        let allowed = match &self.mode {
            Specialization::Generic => true,
            Specialization::OneParam { .. } => matches!(
                self.suite,
                SuiteName::Identities
                    | SuiteName::Center
                    | SuiteName::Gwa
                    | SuiteName::Virasoro
                    | SuiteName::Fock
                    | SuiteName::Inner
            ),
            Specialization::Quotient(_) => matches!(
                self.suite,
                SuiteName::Identities | SuiteName::Center | SuiteName::Virasoro
            ),
            Specialization::Numeric { .. } => self.suite == SuiteName::Oscillator,
        };
        if !allowed {
            return Err(format!(
                "suite {} does not support mode {}",
                self.suite, self.mode
            ));
        }
        Ok(())
    }
}

/// Outcome of one check body: pass flag plus witness on failure.
type Outcome = (bool, Option<String>);

struct Check {
    suite: &'static str,
    check: String,
    anchor: &'static str,
    params: String,
    run: Box<dyn Fn() -> Outcome + Send + Sync>,
}

/// Run the configured suite and assemble an order-stable report.
pub fn run(cfg: &SuiteConfig) -> Result<VerificationReport, String> {
    cfg.validate()?;
    let mut checks = Vec::new();
    let members: Vec<SuiteName> = match cfg.suite {
        SuiteName::All => SuiteName::all().to_vec(),
        one => vec![one],
    };
    for suite in members {
        checks.extend(collect(suite, cfg)?);
    }
    let entries = if cfg.jobs > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.jobs)
            .build()
            .map_err(|e| format!("thread pool: {e}"))?
            .install(|| execute(checks))
    } else {
        execute(checks)
    };
    Ok(VerificationReport::from_entries(entries))
}

fn execute(checks: Vec<Check>) -> Vec<CheckEntry> {
    checks
        .into_par_iter()
        .map(|c| {
            let start = Instant::now();
            let (pass, witness) = (c.run)();
            CheckEntry {
                suite: c.suite.to_string(),
                check: c.check,
                anchor: c.anchor.to_string(),
                params: c.params,
                pass,
                witness,
                micros: start.elapsed().as_micros() as u64,
            }
        })
        .collect()
}

fn collect(suite: SuiteName, cfg: &SuiteConfig) -> Result<Vec<Check>, String> {
    match suite {
        SuiteName::Identities => Ok(identities_checks(cfg)),
        SuiteName::Diamond => Ok(diamond_checks(cfg)),
        SuiteName::Center => center_checks(cfg),
        SuiteName::Morphisms => Ok(morphisms_checks()),
        SuiteName::Gwa => gwa_checks(cfg),
        SuiteName::Virasoro => Ok(virasoro_checks(cfg)),
        SuiteName::Fock => fock_checks(cfg),
        SuiteName::Oscillator => oscillator_checks(cfg),
        SuiteName::Bmodule => Ok(bmodule_checks(cfg)),
        SuiteName::Inner => inner_checks(cfg),
        SuiteName::All => unreachable!("expanded by run"),
    }
}

/// Zero test for a scalar gap, exact or under a specialization.
fn scalar_gap(gap: &Scalar, mode: &Specialization) -> Outcome {
    match mode {
        Specialization::Generic => pass_iff(gap.is_zero(), || gap.to_string()),
        m => match m.kills(gap) {
            Ok(true) => (true, None),
            Ok(false) => (false, Some(gap.to_string())),
            Err(e) => (false, Some(e.to_string())),
        },
    }
}

/// Zero test for a PBW gap, exact or coefficientwise under a mode.
fn pbw_gap(gap: &PBWElement, mode: &Specialization) -> Outcome {
    match mode {
        Specialization::Generic => pass_iff(gap.is_zero(), || gap.to_string()),
        m => {
            for (_, c) in gap.terms() {
                match m.kills(c) {
                    Ok(true) => {}
                    Ok(false) => return (false, Some(gap.to_string())),
                    Err(e) => return (false, Some(e.to_string())),
                }
            }
            (true, None)
        }
    }
}

fn pass_iff(ok: bool, witness: impl FnOnce() -> String) -> Outcome {
    if ok {
        (true, None)
    } else {
        (false, Some(witness()))
    }
}

fn relation_outcome(checks: Vec<RelationCheck>, name: &str) -> Outcome {
    match checks.into_iter().find(|c| c.name == name) {
        Some(c) => (c.pass, c.witness),
        None => (false, Some(format!("check {name} missing"))),
    }
}

fn identities_checks(cfg: &SuiteConfig) -> Vec<Check> {
    let mode = cfg.mode.clone();
    let label = mode.to_string();
    let mut out = Vec::new();
    for n in -100..=100i64 {
        let m = mode.clone();
        out.push(Check {
            suite: "identities",
            check: format!("n={n}"),
            anchor: "pq-fraction-formula",
            params: label.clone(),
            run: Box::new(move || {
                let denom = Scalar::q() - Scalar::p().inv().expect("p is a unit");
                let gap = pq_number(n) * denom - (Scalar::q_pow(n) - Scalar::p_pow(-n));
                scalar_gap(&gap, &m)
            }),
        });
        let m = mode.clone();
        out.push(Check {
            suite: "identities",
            check: format!("n={n}"),
            anchor: "pq-recurrence-alternate",
            params: label.clone(),
            run: Box::new(move || {
                let p_inv = Scalar::p_pow(-1);
                let gap = pq_number(n + 1) - Scalar::q_pow(n) - p_inv * pq_number(n);
                scalar_gap(&gap, &m)
            }),
        });
    }
    for n in 1..=100i64 {
        let m = mode.clone();
        out.push(Check {
            suite: "identities",
            check: format!("n={n}"),
            anchor: "pq-negative-reflection",
            params: label.clone(),
            run: Box::new(move || {
                let ratio = Scalar::p_pow(n) * Scalar::q_pow(-n);
                let gap = pq_number(-n) + ratio * pq_number(n);
                scalar_gap(&gap, &m)
            }),
        });
    }
    for n in 0..=50i64 {
        out.push(Check {
            suite: "identities",
            check: format!("n={n}"),
            anchor: "pq-equal-parameter-collapse",
            params: "oneparam:1,1".to_string(),
            run: Box::new(move || {
                let spec = Specialization::one_param(1, 1).expect("valid pair");
                let mut expected = TScalar::zero();
                for k in 0..n {
                    expected = expected + TScalar::t_pow(n - 1 - 2 * k);
                }
                match spec.apply(&pq_number(n)) {
                    Ok(SpecValue::OneParam(v)) => {
                        pass_iff(v == expected, || format!("collapsed to {v}"))
                    }
                    other => (false, Some(format!("unexpected image {other:?}"))),
                }
            }),
        });
    }
    for n in 1..=cfg.bounds.range {
        let m = mode.clone();
        out.push(Check {
            suite: "identities",
            check: format!("n={n}"),
            anchor: "reorder-y-x-power",
            params: label.clone(),
            run: Box::new(move || {
                let h = HpqRing::standard();
                let mut acc = PBWElement::y();
                for _ in 0..n {
                    acc = h.mul(&acc, &PBWElement::x());
                }
                let gap = acc.sub_ref(&h.reorder_closed_form(n, PowerSide::X));
                pbw_gap(&gap, &m)
            }),
        });
        let m = mode.clone();
        out.push(Check {
            suite: "identities",
            check: format!("n={n}"),
            anchor: "reorder-y-power-x",
            params: label.clone(),
            run: Box::new(move || {
                let h = HpqRing::standard();
                let mut acc = PBWElement::x();
                for _ in 0..n {
                    acc = h.mul(&PBWElement::y(), &acc);
                }
                let gap = acc.sub_ref(&h.reorder_closed_form(n, PowerSide::Y));
                pbw_gap(&gap, &m)
            }),
        });
    }
    out
}

fn diamond_checks(cfg: &SuiteConfig) -> Vec<Check> {
    let confluence = |twist: Scalar| -> Outcome {
        let overlaps = check_overlaps(&hpq_rules(&twist));
        match overlaps.first() {
            None => (true, None),
            Some(o) => (false, Some(o.to_string())),
        }
    };
    match cfg.pprime {
        Some(choice) => {
            let (id, twist) = match choice {
                TwistChoice::InverseP => ("confluence:pprime=p^-1", Scalar::p_pow(-1)),
                TwistChoice::EqualP => ("confluence:pprime=p", Scalar::p()),
            };
            vec![Check {
                suite: "diamond",
                check: id.to_string(),
                anchor: "overlap-resolution",
                params: "generic".to_string(),
                run: Box::new(move || confluence(twist.clone())),
            }]
        }
        None => vec![
            Check {
                suite: "diamond",
                check: "confluence:pprime=p^-1".to_string(),
                anchor: "overlap-resolution",
                params: "generic".to_string(),
                run: Box::new(move || confluence(Scalar::p_pow(-1))),
            },
            Check {
                suite: "diamond",
                check: "obstruction:pprime=p".to_string(),
                anchor: "overlap-obstruction",
                params: "generic".to_string(),
                run: Box::new(|| {
                    let overlaps = check_overlaps(&hpq_rules(&Scalar::p()));
                    let zyx = Word(vec![
                        Letter::plain(2),
                        Letter::plain(1),
                        Letter::plain(0),
                    ]);
                    pass_iff(overlaps.iter().any(|o| o.word == zyx), || {
                        "no unresolved overlap at the word z*y*x".to_string()
                    })
                }),
            },
        ],
    }
}

fn center_checks(cfg: &SuiteConfig) -> Result<Vec<Check>, String> {
    let mut out = Vec::new();
    let theta_check = Check {
        suite: "center",
        check: "theta-normal".to_string(),
        anchor: "normal-element-twist",
        params: "generic".to_string(),
        run: Box::new(|| {
            let h = HpqRing::standard();
            let twist = [
                Scalar::q(),
                Scalar::q_pow(-1),
                Scalar::from_int(1),
            ];
            pass_iff(h.check_normal(&h.theta(), &twist), || {
                "conjugation misses the (q, q^-1, 1) twist".to_string()
            })
        }),
    };
    let omega_pair = |out: &mut Vec<Check>, r: u32, s: u32| {
        out.push(Check {
            suite: "center",
            check: format!("omega-central:r={r},s={s}"),
            anchor: "dependent-central-element",
            params: format!("oneparam:{r},{s}"),
            run: Box::new(move || {
                let h = HpqRing::standard();
                let spec = match Specialization::one_param(r as i64, s as i64) {
                    Ok(spec) => spec,
                    Err(e) => return (false, Some(e.to_string())),
                };
                match h.is_central(&h.omega(r, s), Some(&spec)) {
                    Ok(ok) => pass_iff(ok, || "a generator commutator survives".to_string()),
                    Err(e) => (false, Some(e.to_string())),
                }
            }),
        });
        out.push(Check {
            suite: "center",
            check: format!("omega-generic-sentinel:r={r},s={s}"),
            anchor: "generic-noncentrality",
            params: "generic".to_string(),
            run: Box::new(move || {
                let h = HpqRing::standard();
                match h.is_central(&h.omega(r, s), None) {
                    Ok(central) => pass_iff(!central, || {
                        "central without the parameter dependence".to_string()
                    }),
                    Err(e) => (false, Some(e.to_string())),
                }
            }),
        });
    };
    match &cfg.mode {
        Specialization::Generic => {
            out.push(theta_check);
            for (r, s) in [(1u32, 1u32), (1, 2), (2, 3), (3, 5)] {
                omega_pair(&mut out, r, s);
            }
            out.push(Check {
                suite: "center",
                check: "powers-central".to_string(),
                anchor: "root-of-unity-centrality",
                params: "cyclotomic:12:4,3".to_string(),
                run: Box::new(|| {
                    let spec = match QuotientRing::cyclotomic(12, 4, 3) {
                        Ok(ring) => Specialization::Quotient(ring),
                        Err(e) => return (false, Some(e.to_string())),
                    };
                    let h = HpqRing::standard();
                    match h.root_of_unity_centrality(3, 4, &spec) {
                        Ok(ok) => pass_iff(ok, || "a power fails to centralize".to_string()),
                        Err(e) => (false, Some(e.to_string())),
                    }
                }),
            });
            out.push(Check {
                suite: "center",
                check: "pq-number-vanishes:n=12".to_string(),
                anchor: "root-of-unity-number-vanishing",
                params: "cyclotomic:12:4,3".to_string(),
                run: Box::new(|| {
                    let spec = match QuotientRing::cyclotomic(12, 4, 3) {
                        Ok(ring) => Specialization::Quotient(ring),
                        Err(e) => return (false, Some(e.to_string())),
                    };
                    match spec.kills(&pq_number(12)) {
                        Ok(ok) => pass_iff(ok, || "quantum integer 12 survives".to_string()),
                        Err(e) => (false, Some(e.to_string())),
                    }
                }),
            });
        }
        Specialization::OneParam { r, s } => {
            out.push(theta_check);
            omega_pair(&mut out, *r as u32, *s as u32);
        }
        Specialization::Quotient(ring) => {
            let op = unit_order(ring, ring.p_image())?;
            let oq = unit_order(ring, ring.q_image())?;
            let lcm = op / gcd_u32(op, oq) * oq;
            let m = lcm / op;
            let label = cfg.mode.to_string();
            let mode = cfg.mode.clone();
            out.push(Check {
                suite: "center",
                check: format!("powers-central:z^{op},x^{lcm},y^{lcm}"),
                anchor: "root-of-unity-centrality",
                params: label.clone(),
                run: Box::new(move || {
                    let h = HpqRing::standard();
                    match h.root_of_unity_centrality(op, m, &mode) {
                        Ok(ok) => pass_iff(ok, || "a power fails to centralize".to_string()),
                        Err(e) => (false, Some(e.to_string())),
                    }
                }),
            });
            let mode = cfg.mode.clone();
            out.push(Check {
                suite: "center",
                check: format!("pq-number-vanishes:n={lcm}"),
                anchor: "root-of-unity-number-vanishing",
                params: label,
                run: Box::new(move || match mode.kills(&pq_number(lcm as i64)) {
                    Ok(ok) => pass_iff(ok, || format!("quantum integer {lcm} survives")),
                    Err(e) => (false, Some(e.to_string())),
                }),
            });
        }
        Specialization::Numeric { .. } => unreachable!("rejected by validate"),
    }
    Ok(out)
}

/// Multiplicative order of a unit in the quotient ring.
fn unit_order(ring: &QuotientRing, elem: &UniPoly) -> Result<u32, String> {
    let mut acc = ring.reduce(elem);
    for k in 1..=4096u32 {
        if acc.is_one() {
            return Ok(k);
        }
        acc = ring.mul(&acc, elem);
    }
    Err("parameter image is not a root of unity of order <= 4096".to_string())
}

fn gcd_u32(a: u32, b: u32) -> u32 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

fn morphisms_checks() -> Vec<Check> {
    let mut out = Vec::new();
    let mut push = |check: &str, anchor: &'static str, run: Box<dyn Fn() -> Outcome + Send + Sync>| {
        out.push(Check {
            suite: "morphisms",
            check: check.to_string(),
            anchor,
            params: "generic".to_string(),
            run,
        });
    };
    push(
        "identity-map",
        "generator-image-relations",
        Box::new(|| {
            let h = HpqRing::standard();
            pass_iff(AlgebraMorphism::identity(&h).verify(), || {
                "identity images break a relation".to_string()
            })
        }),
    );
    push(
        "parameter-flip",
        "generator-image-relations",
        Box::new(|| {
            let h = HpqRing::standard();
            pass_iff(AlgebraMorphism::param_flip(&h).verify(), || {
                "flip images break a relation".to_string()
            })
        }),
    );
    push(
        "parameter-swap",
        "generator-image-relations",
        Box::new(|| {
            let h = HpqRing::standard();
            pass_iff(AlgebraMorphism::param_swap(&h).verify(), || {
                "swap images break a relation".to_string()
            })
        }),
    );
    push(
        "equal-parameter-involution",
        "generator-image-relations",
        Box::new(|| {
            pass_iff(AlgebraMorphism::equal_param_involution().verify(), || {
                "involution images break a relation".to_string()
            })
        }),
    );
    push(
        "involution-theta-image",
        "normal-element-image",
        Box::new(|| {
            let tau = AlgebraMorphism::equal_param_involution();
            let theta = tau.source.theta();
            let expect = PBWElement::z().scale(&Scalar::q_pow(2));
            let gap = tau.apply(&theta).sub_ref(&expect);
            pass_iff(gap.is_zero(), || gap.to_string())
        }),
    );
    push(
        "flip-roundtrip",
        "composition-identity",
        Box::new(|| {
            let h = HpqRing::standard();
            let flip = AlgebraMorphism::param_flip(&h);
            let round = AlgebraMorphism::param_flip(&flip.target).compose(&flip);
            let ok = round.verify()
                && round.x_image == PBWElement::x()
                && round.y_image == PBWElement::y()
                && round.z_image == PBWElement::z();
            pass_iff(ok, || "double flip is not the identity".to_string())
        }),
    );
    push(
        "down-up-relations",
        "down-up-compatibility",
        Box::new(|| {
            let h = HpqRing::standard();
            pass_iff(h.verify_downup(), || {
                "cubic relations fail at the (p, q) coefficients".to_string()
            })
        }),
    );
    push(
        "twist-z-x-commute",
        "regraded-products",
        Box::new(|| {
            let h = HpqRing::standard();
            let gap = h
                .zhang_twist_product(&PBWElement::z(), &PBWElement::x())
                .sub_ref(&h.zhang_twist_product(&PBWElement::x(), &PBWElement::z()));
            pass_iff(gap.is_zero(), || gap.to_string())
        }),
    );
    push(
        "twist-z-y-commute",
        "regraded-products",
        Box::new(|| {
            let h = HpqRing::standard();
            let gap = h
                .zhang_twist_product(&PBWElement::z(), &PBWElement::y())
                .sub_ref(&h.zhang_twist_product(&PBWElement::y(), &PBWElement::z()));
            pass_iff(gap.is_zero(), || gap.to_string())
        }),
    );
    push(
        "twist-y-x-quommutator",
        "regraded-products",
        Box::new(|| {
            let h = HpqRing::standard();
            let pq = Scalar::p() * Scalar::q();
            let gap = h
                .zhang_twist_product(&PBWElement::y(), &PBWElement::x())
                .sub_ref(&h.zhang_twist_product(&PBWElement::x(), &PBWElement::y()).scale(&pq))
                .sub_ref(&PBWElement::z().scale(&Scalar::sqrt_p()));
            pass_iff(gap.is_zero(), || gap.to_string())
        }),
    );
    out
}

fn gwa_checks(cfg: &SuiteConfig) -> Result<Vec<Check>, String> {
    let mut out = Vec::new();
    let (_, checks) = hpq_as_gwa();
    for rc in checks {
        let name = rc.name;
        out.push(Check {
            suite: "gwa",
            check: format!("hpq:{name}"),
            anchor: "quantum-plane-model",
            params: "generic".to_string(),
            run: Box::new(move || relation_outcome(hpq_as_gwa().1, name)),
        });
    }
    let (_, checks) = apq_indep_gwa();
    for rc in checks {
        let name = rc.name;
        out.push(Check {
            suite: "gwa",
            check: format!("apq:{name}"),
            anchor: "independent-quotient-model",
            params: "generic".to_string(),
            run: Box::new(move || relation_outcome(apq_indep_gwa().1, name)),
        });
    }
    let pairs: Vec<(i64, i64)> = match &cfg.mode {
        Specialization::OneParam { r, s } => vec![(*r, *s)],
        _ => vec![(1, 1), (1, 2), (2, 3)],
    };
    for (r, s) in pairs.clone() {
        let (_, checks) = aprs_as_gwa(r, s)?;
        for rc in checks {
            let name = rc.name;
            out.push(Check {
                suite: "gwa",
                check: format!("aprs:{r},{s}:{name}"),
                anchor: "dependent-quotient-model",
                params: format!("oneparam:{r},{s}"),
                run: Box::new(move || match aprs_as_gwa(r, s) {
                    Ok((_, checks)) => relation_outcome(checks, name),
                    Err(e) => (false, Some(e)),
                }),
            });
        }
    }
    let (cross_r, cross_s) = match &cfg.mode {
        Specialization::OneParam { r, s } => (*r, *s),
        _ => (2, 3),
    };
    for n in [2usize, 3] {
        tensor_power(n, cross_r, cross_s)?;
        let label = format!("oneparam:{cross_r},{cross_s}");
        for i in 0..n {
            for j in 0..n {
                out.push(Check {
                    suite: "gwa",
                    check: format!("cross-literal:n={n}:i={i},j={j}"),
                    anchor: "tensor-cross-bracket-literal",
                    params: label.clone(),
                    run: Box::new(move || match tensor_power(n, cross_r, cross_s) {
                        Ok(alg) => {
                            let gap = alg.cross_gap_literal(i, j);
                            pass_iff(gap.is_zero(), || alg.data.display(&gap))
                        }
                        Err(e) => (false, Some(e)),
                    }),
                });
                out.push(Check {
                    suite: "gwa",
                    check: format!("cross-uniform:n={n}:i={i},j={j}"),
                    anchor: "tensor-cross-bracket-uniform",
                    params: label.clone(),
                    run: Box::new(move || match tensor_power(n, cross_r, cross_s) {
                        Ok(alg) => {
                            let gap = alg.cross_gap_uniform(i, j);
                            pass_iff(gap.is_zero(), || alg.data.display(&gap))
                        }
                        Err(e) => (false, Some(e)),
                    }),
                });
            }
        }
        let probe = tensor_power(n, cross_r, cross_s)?;
        for i in 0..n {
            for j in (i + 1)..n {
                for rc in probe.cross_component_checks(i, j) {
                    let name = rc.name;
                    out.push(Check {
                        suite: "gwa",
                        check: format!("cross-commute:n={n}:i={i},j={j}:{name}"),
                        anchor: "tensor-component-commutation",
                        params: label.clone(),
                        run: Box::new(move || match tensor_power(n, cross_r, cross_s) {
                            Ok(alg) => relation_outcome(alg.cross_component_checks(i, j), name),
                            Err(e) => (false, Some(e)),
                        }),
                    });
                }
            }
        }
    }
    Ok(out)
}

fn virasoro_checks(cfg: &SuiteConfig) -> Vec<Check> {
    let v = cfg.bounds.virasoro;
    let mut out = Vec::new();
    for n in -v..=v {
        out.push(Check {
            suite: "virasoro",
            check: format!("normal-form:n={n}"),
            anchor: "virasoro-normal-form",
            params: "generic".to_string(),
            run: Box::new(move || {
                let lr = LocalRing::standard();
                let expect =
                    LocalElement::monomial(n + 1, 1, -1).scale(&Scalar::p_pow(n));
                let gap = lr.virasoro_l(n).sub_ref(&expect);
                pass_iff(gap.is_zero(), || gap.to_string())
            }),
        });
    }
    let bracket = |out: &mut Vec<Check>, id: &str, label: String, spec: Option<Specialization>| {
        for n in -v..=v {
            for m in -v..=v {
                let spec = spec.clone();
                out.push(Check {
                    suite: "virasoro",
                    check: format!("{id}:n={n},m={m}"),
                    anchor: "virasoro-bracket",
                    params: label.clone(),
                    run: Box::new(move || {
                        let lr = LocalRing::standard();
                        match lr.verify_virasoro(n, m, spec.as_ref()) {
                            Ok(true) => (true, None),
                            Ok(false) => (false, Some(lr.virasoro_gap(n, m).to_string())),
                            Err(e) => (false, Some(e.to_string())),
                        }
                    }),
                });
            }
        }
    };
    match &cfg.mode {
        Specialization::Generic => {
            bracket(&mut out, "bracket", "generic".to_string(), None);
            let spec = Specialization::one_param(2, 3).expect("valid pair");
            bracket(
                &mut out,
                "bracket-dependent",
                "oneparam:2,3".to_string(),
                Some(spec),
            );
        }
        mode => bracket(&mut out, "bracket", mode.to_string(), Some(mode.clone())),
    }
    for n in -v..=v {
        for m in -v..=v {
            out.push(Check {
                suite: "virasoro",
                check: format!("module-bracket:n={n},m={m}"),
                anchor: "virasoro-module-action",
                params: "generic".to_string(),
                run: Box::new(move || {
                    let b = BModule::new();
                    for k in -12..=12i64 {
                        let gap = b.virasoro_action_gap(n, m, k);
                        if !gap.is_zero() {
                            return (false, Some(format!("k={k}: {gap}")));
                        }
                    }
                    (true, None)
                }),
            });
        }
    }
    out
}

fn fock_checks(cfg: &SuiteConfig) -> Result<Vec<Check>, String> {
    let configs: Vec<(usize, i64, i64)> = match &cfg.mode {
        Specialization::OneParam { r, s } => vec![(1, *r, *s), (2, *r, *s)],
        _ => vec![(1, 1, 1), (1, 2, 3), (2, 2, 3), (3, 1, 2)],
    };
    let degree = cfg.bounds.degree;
    let mut out = Vec::new();
    for (n, r, s) in configs {
        FockSpace::new(n, r, s)?;
        out.push(Check {
            suite: "fock",
            check: format!("n={n},r={r},s={s}:relations"),
            anchor: "fock-defining-relations",
            params: format!("oneparam:{r},{s}"),
            run: Box::new(move || match FockSpace::new(n, r, s) {
                Ok(fock) => {
                    for rc in fock.relation_checks(degree) {
                        if !rc.pass {
                            let w = rc.witness.unwrap_or_default();
                            return (false, Some(format!("{}: {w}", rc.name)));
                        }
                    }
                    (true, None)
                }
                Err(e) => (false, Some(e)),
            }),
        });
        out.push(Check {
            suite: "fock",
            check: format!("n={n},r={r},s={s}:descent"),
            anchor: "fock-descent-factorials",
            params: format!("oneparam:{r},{s}"),
            run: Box::new(move || {
                let fock = match FockSpace::new(n, r, s) {
                    Ok(f) => f,
                    Err(e) => return (false, Some(e)),
                };
                let spec = match Specialization::one_param(r, s) {
                    Ok(spec) => spec,
                    Err(e) => return (false, Some(e.to_string())),
                };
                for m in monomials_up_to(n, degree) {
                    let got = fock.descent(&m);
                    if got.is_zero() {
                        return (false, Some(format!("descent vanishes at {m:?}")));
                    }
                    let mut product = Scalar::from_int(1);
                    for d in &m {
                        product = product * pq_factorial(*d as i64);
                    }
                    match spec.apply(&product) {
                        Ok(SpecValue::OneParam(v)) if v == got => {}
                        Ok(other) => {
                            return (
                                false,
                                Some(format!("at {m:?}: descent {got}, factorials {other}")),
                            )
                        }
                        Err(e) => return (false, Some(e.to_string())),
                    }
                }
                (true, None)
            }),
        });
    }
    Ok(out)
}

/// Exponent vectors with total degree at most `degree`.
fn monomials_up_to(n: usize, degree: u32) -> Vec<Vec<u32>> {
    fn rec(cur: &mut Vec<u32>, left: u32, n: usize, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for d in 0..=left {
            cur.push(d);
            rec(cur, left - d, n, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), degree, n, &mut out);
    out
}

fn oscillator_checks(cfg: &SuiteConfig) -> Result<Vec<Check>, String> {
    let (p, q, label) = match &cfg.mode {
        Specialization::Generic => (1.3f64, 1.7f64, "numeric:1.3,1.7".to_string()),
        Specialization::Numeric { p, q } => {
            if p.im != 0.0 || q.im != 0.0 || p.re <= 0.0 || q.re <= 0.0 {
                return Err("oscillator parameters must be positive reals".to_string());
            }
            (p.re, q.re, cfg.mode.to_string())
        }
        _ => unreachable!("rejected by validate"),
    };
    let dim = cfg.bounds.matrix;
    let probe = build_oscillator(dim, p, q)?;
    let mut out = Vec::new();
    for (name, _) in probe.relation_residuals() {
        out.push(Check {
            suite: "oscillator",
            check: format!("relation:{name}"),
            anchor: "oscillator-ladder-relations",
            params: label.clone(),
            run: Box::new(move || match build_oscillator(dim, p, q) {
                Ok(mats) => {
                    match mats.relation_residuals().into_iter().find(|(n, _)| *n == name) {
                        Some((_, residual)) => pass_iff(residual < OSCILLATOR_TOL, || {
                            format!("residual {residual:.3e}")
                        }),
                        None => (false, Some(format!("residual {name} missing"))),
                    }
                }
                Err(e) => (false, Some(e)),
            }),
        });
    }
    for (name, _) in probe.diagonal_twist_residuals() {
        out.push(Check {
            suite: "oscillator",
            check: format!("twist:{name}"),
            anchor: "oscillator-diagonal-twists",
            params: label.clone(),
            run: Box::new(move || match build_oscillator(dim, p, q) {
                Ok(mats) => {
                    match mats
                        .diagonal_twist_residuals()
                        .into_iter()
                        .find(|(n, _)| *n == name)
                    {
                        Some((_, residual)) => pass_iff(residual < OSCILLATOR_TOL, || {
                            format!("residual {residual:.3e}")
                        }),
                        None => (false, Some(format!("residual {name} missing"))),
                    }
                }
                Err(e) => (false, Some(e)),
            }),
        });
    }
    if matches!(cfg.mode, Specialization::Generic) {
        out.push(Check {
            suite: "oscillator",
            check: "power-relation:r=2,s=3".to_string(),
            anchor: "oscillator-power-relation",
            params: "numeric:1.2^2,1.2^3".to_string(),
            run: Box::new(move || {
                let tau = 1.2f64;
                match build_oscillator(dim, tau.powi(2), tau.powi(3)) {
                    Ok(mats) => {
                        let residual = mats.power_relation_residual(2, 3);
                        pass_iff(residual < POWER_TOL, || format!("residual {residual:.3e}"))
                    }
                    Err(e) => (false, Some(e)),
                }
            }),
        });
    }
    Ok(out)
}

fn bmodule_checks(cfg: &SuiteConfig) -> Vec<Check> {
    let mut out = Vec::new();
    for k in -cfg.bounds.window..=cfg.bounds.window {
        out.push(Check {
            suite: "bmodule",
            check: format!("annihilation:k={k}"),
            anchor: "module-annihilation",
            params: "generic".to_string(),
            run: Box::new(move || {
                let gap = BModule::new().annihilation_gap(k);
                pass_iff(gap.is_zero(), || gap.to_string())
            }),
        });
    }
    out.push(Check {
        suite: "bmodule",
        check: "displayed-branch-sentinel".to_string(),
        anchor: "module-action-branch",
        params: "generic".to_string(),
        run: Box::new(|| {
            let gap = BModule::new().displayed_negative_branch_gap(-1);
            pass_iff(!gap.is_zero(), || {
                "displayed lowering branch satisfies the relation at k=-1".to_string()
            })
        }),
    });
    for i in 0..50u64 {
        out.push(Check {
            suite: "bmodule",
            check: format!("random-descent:i={i}"),
            anchor: "module-descent",
            params: "generic".to_string(),
            run: Box::new(move || {
                let mut rng = ChaCha8Rng::seed_from_u64(DESCENT_SEED.wrapping_add(i));
                let mut v = ZModuleVector::zero();
                let size = rng.random_range(1..=6usize);
                let mut used = std::collections::BTreeSet::new();
                while used.len() < size {
                    used.insert(rng.random_range(-10..=10i64));
                }
                for k in used {
                    let mut num = 0i64;
                    while num == 0 {
                        num = rng.random_range(-9..=9i64);
                    }
                    let den = rng.random_range(1..=9i64);
                    let c = Scalar::from_int(num)
                        * Scalar::from_int(den).inv().expect("nonzero");
                    v.add_term(k, c);
                }
                let (_, coeff) = BModule::new().descent(&v);
                pass_iff(!coeff.is_zero(), || {
                    "descent reached a zero coefficient".to_string()
                })
            }),
        });
    }
    out
}

fn inner_checks(cfg: &SuiteConfig) -> Result<Vec<Check>, String> {
    let pairs: Vec<(i64, i64)> = match &cfg.mode {
        Specialization::OneParam { r, s } => vec![(*r, *s)],
        _ => vec![(1, 1), (1, 2), (2, 3)],
    };
    let mut out = Vec::new();
    let lr = LocalRing::standard();
    for (r, s) in pairs {
        for rc in lr.verify_inner(r, s)? {
            let name = rc.name;
            out.push(Check {
                suite: "inner",
                check: format!("r={r},s={s}:{name}"),
                anchor: "inner-conjugation-relations",
                params: "generic".to_string(),
                run: Box::new(move || match LocalRing::standard().verify_inner(r, s) {
                    Ok(checks) => relation_outcome(checks, name),
                    Err(e) => (false, Some(e)),
                }),
            });
        }
    }
    let mut push = |check: &str, anchor: &'static str, run: Box<dyn Fn() -> Outcome + Send + Sync>| {
        out.push(Check {
            suite: "inner",
            check: check.to_string(),
            anchor,
            params: "generic".to_string(),
            run,
        });
    };
    push(
        "theta-factorization",
        "normal-element-factorization",
        Box::new(|| match LocalRing::standard().verify_theta_factorization() {
            Some(true) => (true, None),
            Some(false) => (false, Some("factorization gap is nonzero".to_string())),
            None => (false, Some("undefined at pq = 1".to_string())),
        }),
    );
    push(
        "theta-factorization-squared",
        "normal-element-factorization",
        Box::new(
            || match LocalRing::standard().verify_theta_factorization_squared() {
                Some(true) => (true, None),
                Some(false) => (false, Some("squared factorization gap is nonzero".to_string())),
                None => (false, Some("undefined at pq = 1".to_string())),
            },
        ),
    );
    push(
        "quantum-weyl-relation",
        "localized-weyl-generators",
        Box::new(|| {
            pass_iff(LocalRing::standard().quantum_weyl_subring_check(), || {
                "the twisted commutator is not 1".to_string()
            })
        }),
    );
    push(
        "idealizer-contains-powers:bound=6",
        "idealizer-membership",
        Box::new(|| {
            pass_iff(LocalRing::standard().idealizer_generator_check(6), || {
                "some x^n w leaves the left ideal".to_string()
            })
        }),
    );
    push(
        "idealizer-excludes-x",
        "idealizer-membership",
        Box::new(|| {
            match LocalRing::standard().weyl_left_multiple_in_ideal(&LocalElement::x()) {
                Some(false) => (true, None),
                Some(true) => (false, Some("x idealizes the left ideal".to_string())),
                None => (false, Some("x does not decompose in the basis".to_string())),
            }
        }),
    );
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_bounds_match_acceptance_values() {
        let b = SuiteBounds::default();
        assert_eq!(
            (b.degree, b.range, b.virasoro, b.window, b.matrix),
            (6, 30, 8, 20, 64)
        );
    }

    #[test]
    fn suite_names_round_trip() {
        for suite in SuiteName::all() {
            assert_eq!(suite.to_string().parse::<SuiteName>().unwrap(), suite);
        }
        assert_eq!("all".parse::<SuiteName>().unwrap(), SuiteName::All);
        assert!("spectra".parse::<SuiteName>().is_err());
    }

    #[test]
    fn validation_rejects_incompatible_modes() {
        let mut cfg = SuiteConfig::new(SuiteName::Morphisms);
        cfg.mode = Specialization::one_param(2, 3).unwrap();
        assert!(cfg.validate().is_err());
        let mut cfg = SuiteConfig::new(SuiteName::Identities);
        cfg.mode = Specialization::numeric(
            num::complex::Complex64::new(1.3, 0.0),
            num::complex::Complex64::new(1.7, 0.0),
        )
        .unwrap();
        assert!(cfg.validate().is_err());
        let mut cfg = SuiteConfig::new(SuiteName::Oscillator);
        cfg.mode = Specialization::Generic;
        assert!(cfg.validate().is_ok());
        let mut cfg = SuiteConfig::new(SuiteName::Inner);
        cfg.pprime = Some(TwistChoice::EqualP);
        assert!(cfg.validate().is_err());
        let mut cfg = SuiteConfig::new(SuiteName::Bmodule);
        cfg.bounds.window = 0;
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn small_identity_suite_passes() {
        let mut cfg = SuiteConfig::new(SuiteName::Identities);
        cfg.bounds.range = 4;
        let report = run(&cfg).unwrap();
        assert!(report.all_pass(), "failures: {:?}", report.failures().count());
        assert_eq!(report.failed(), 0);
        let text = report.serialize();
        let back = VerificationReport::parse(&text).unwrap();
        assert_eq!(back.passed(), report.passed());
    }

    #[test]
    fn diamond_suite_distinguishes_twists() {
        let cfg = SuiteConfig::new(SuiteName::Diamond);
        let report = run(&cfg).unwrap();
        assert!(report.all_pass());
        let mut cfg = SuiteConfig::new(SuiteName::Diamond);
        cfg.pprime = Some(TwistChoice::EqualP);
        let report = run(&cfg).unwrap();
        assert_eq!(report.failed(), 1);
        let entry = report.failures().next().unwrap();
        assert!(entry.witness.as_deref().unwrap().starts_with("z*y*x"));
        let mut cfg = SuiteConfig::new(SuiteName::Diamond);
        cfg.pprime = Some(TwistChoice::InverseP);
        assert!(run(&cfg).unwrap().all_pass());
    }

    #[test]
    fn center_suite_passes_in_quotient_mode() {
        let mut cfg = SuiteConfig::new(SuiteName::Center);
        cfg.mode =
            Specialization::Quotient(QuotientRing::cyclotomic(12, 4, 3).unwrap());
        let report = run(&cfg).unwrap();
        assert!(report.all_pass());
        let checks: Vec<&str> = report
            .entries()
            .iter()
            .map(|e| e.check.as_str())
            .collect();
        assert!(checks.contains(&"powers-central:z^3,x^12,y^12"));
        assert!(checks.contains(&"pq-number-vanishes:n=12"));
    }

    #[test]
    fn gwa_suite_records_the_literal_cross_failure() {
        let mut cfg = SuiteConfig::new(SuiteName::Gwa);
        cfg.mode = Specialization::one_param(1, 1).unwrap();
        cfg.jobs = 2;
        let report = run(&cfg).unwrap();
        let literal_fails = report
            .failures()
            .filter(|e| e.anchor == "tensor-cross-bracket-literal")
            .count();
        // Both tensor sizes fail exactly at the off-diagonal pairs.
        assert_eq!(literal_fails, 2 + 6);
        assert_eq!(report.failed(), literal_fails);
        for e in report.entries() {
            if e.anchor != "tensor-cross-bracket-literal" {
                assert!(e.pass, "{} failed: {:?}", e.check, e.witness);
            }
        }
    }

    #[test]
    fn bmodule_suite_is_deterministic() {
        let mut cfg = SuiteConfig::new(SuiteName::Bmodule);
        cfg.bounds.window = 4;
        let first = run(&cfg).unwrap();
        assert!(first.all_pass());
        cfg.jobs = 3;
        let second = run(&cfg).unwrap();
        let strip = |r: &VerificationReport| -> Vec<(String, String, bool)> {
            r.entries()
                .iter()
                .map(|e| (e.check.clone(), e.params.clone(), e.pass))
                .collect()
        };
        assert_eq!(strip(&first), strip(&second));
    }

    #[test]
    fn oscillator_suite_accepts_numeric_mode_only() {
        let mut cfg = SuiteConfig::new(SuiteName::Oscillator);
        cfg.bounds.matrix = 16;
        let report = run(&cfg).unwrap();
        assert!(report.all_pass());
        assert_eq!(report.len(), 7);
        cfg.mode = Specialization::one_param(2, 3).unwrap();
        assert!(run(&cfg).is_err());
    }
}
