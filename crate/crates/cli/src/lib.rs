//! Verification suites and JSON output shared by the `poncelet` binary.

use std::collections::BTreeSet;
use std::io;

use rayon::prelude::*;
use serde::Serialize;

use poncelet::billiard::{launch_tangent, simulate};
use poncelet::cayley::Flavor;
use poncelet::exactalg::{verify_discriminant_example_seeded, ExampleId, DEFAULT_SEED};
use poncelet::extremal::{
    proportionality, verify_akhiezer_n4, verify_akhiezer_pn, verify_zolotarev_n3, AkhiezerCase, IDENTITY_TOL,
    PROPORTIONALITY_TOL,
};
use poncelet::fixtures::{fixtures, Fixture};
use poncelet::linalg::KERNEL_GAP_TOL;
use poncelet::pell::{alternance, build_defect_pair, factor_pell_even, factor_pell_odd, pell_pair, Verdict, PELL_TOL};
use poncelet::rotation::{monotonicity_scan, rotation_number, winding_identity_residual, Side};
use poncelet::ConfocalFamily;

pub const ROTATION_TOL: f64 = 1e-9;
pub const CLOSURE_TOL: f64 = 1e-7;
pub const LAUNCH_PHASE: f64 = 0.37;
pub const MONOTONICITY_SAMPLES: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Pell,
    Extremal,
    Discriminant,
    Rotation,
    All,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Pell => "pell",
            Suite::Extremal => "extremal",
            Suite::Discriminant => "discriminant",
            Suite::Rotation => "rotation",
            Suite::All => "all",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub fixture: String,
    pub check: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    fn new(suite: Suite, fixture: &str, check: &str) -> Self {
        Check {
            suite: suite.name(),
            fixture: fixture.into(),
            check: check.into(),
            passed: false,
            value: None,
            tolerance: None,
            detail: None,
        }
    }

    fn below(mut self, value: f64, tol: f64) -> Self {
        self.passed = value.abs() < tol;
        self.value = Some(value);
        self.tolerance = Some(tol);
        self
    }

    fn flag(mut self, ok: bool, detail: impl Into<String>) -> Self {
        self.passed = ok;
        self.detail = Some(detail.into());
        self
    }

    fn error(self, e: impl std::fmt::Display) -> Self {
        self.flag(false, e.to_string())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub suite: &'static str,
    pub passed: bool,
    pub total: usize,
    pub failed: usize,
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub trials: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            trials: 20,
            seed: DEFAULT_SEED,
        }
    }
}

pub fn run_verify(suite: Suite, opts: &VerifyOptions) -> Report {
    let suites: Vec<Suite> = match suite {
        Suite::All => vec![Suite::Pell, Suite::Extremal, Suite::Discriminant, Suite::Rotation],
        s => vec![s],
    };
    let mut checks: Vec<Check> = suites
        .par_iter()
        .flat_map(|&s| match s {
            Suite::Pell => pell_suite(),
            Suite::Extremal => extremal_suite(),
            Suite::Discriminant => discriminant_suite(opts),
            Suite::Rotation => rotation_suite(),
            Suite::All => unreachable!(),
        })
        .collect();
    checks.sort_by(|x, y| (x.suite, &x.fixture, &x.check).cmp(&(y.suite, &y.fixture, &y.check)));
    let failed = checks.iter().filter(|c| !c.passed).count();
    Report {
        suite: suite.name(),
        passed: failed == 0,
        total: checks.len(),
        failed,
        checks,
    }
}

fn expected_verdict(f: &Fixture) -> Verdict {
    if f.flavor == Flavor::Periodic {
        Verdict::Periodic
    } else {
        Verdict::EllipticOnly
    }
}

/// Closes the orbit launched tangent to the fixture caustic and returns its winding.
fn simulated_winding(f: &Fixture) -> poncelet::Result<(usize, usize, f64)> {
    let fam = f.family();
    let (start, dir) = launch_tangent(&fam, &fam.caustic(f.lambda0), LAUNCH_PHASE)?;
    let t = simulate(&fam, &start, &dir, f.winding.0)?;
    Ok((t.m0, t.m1, t.closure_residual))
}

fn pell_fixture(f: &Fixture) -> Vec<Check> {
    let s = Suite::Pell;
    let fam = f.family();
    let pair = match pell_pair(&fam, f.lambda0, f.n, f.flavor) {
        Ok(p) => p,
        Err(e) => return vec![Check::new(s, &f.id, "pell-pair").error(e)],
    };
    let mut out = vec![Check::new(s, &f.id, "pell-residual").below(pair.residual, PELL_TOL)];

    out.push(match build_defect_pair(&fam, f.lambda0, f.n, f.flavor) {
        Ok(d) => {
            Check::new(s, &f.id, "kernel-unique").below(d.kernel.sigma_min / d.kernel.sigma_second, KERNEL_GAP_TOL)
        }
        Err(e) => Check::new(s, &f.id, "kernel-unique").error(e),
    });

    let verdict = if pair.p_hat.degree() % 2 == 1 {
        factor_pell_odd(&pair, &pair.config).map(|x| x.verdict)
    } else {
        factor_pell_even(&pair, &pair.config).map(|x| x.verdict)
    };
    let sim = simulated_winding(f);
    out.push(match (verdict, &sim) {
        (Ok(v), Ok((m0, m1, res))) => {
            let closes = *res < CLOSURE_TOL && (*m0, *m1) == f.winding;
            let want = expected_verdict(f);
            Check::new(s, &f.id, "verdict").flag(
                v == want && closes,
                format!("verdict {v:?}, expected {want:?}; simulated winding ({m0}, {m1}), closure {res:e}"),
            )
        }
        (Err(e), _) => Check::new(s, &f.id, "verdict").error(e),
        (_, Err(e)) => Check::new(s, &f.id, "verdict").error(e),
    });

    if f.flavor == Flavor::Periodic {
        out.push(match alternance(&pair, &pair.config) {
            Ok(a) => {
                let g = a.signature;
                Check::new(s, &f.id, "alternance").flag(
                    (g.m0, g.m1) == f.winding && a.alternance_size == f.n + 1,
                    format!("(m0, m1) = ({}, {}), tau = ({}, {})", g.m0, g.m1, g.tau1, g.tau2),
                )
            }
            Err(e) => Check::new(s, &f.id, "alternance").error(e),
        });
    }

    if f.id == "n4-a2b1-e" {
        let canonical = |x: f64| (((32.0 * x - 96.0) * x + 88.0) * x - 24.0) * x + 1.0;
        let grid = poncelet::poly::chebyshev_grid(0.0, 2.0, 512);
        let (_, dev) = proportionality(canonical, |x| pair.p_hat.eval(x), &grid);
        out.push(Check::new(s, &f.id, "canonical-form").below(dev, PROPORTIONALITY_TOL));
    }
    out
}

pub fn pell_suite() -> Vec<Check> {
    fixtures().par_iter().flat_map(pell_fixture).collect()
}

fn report_checks(s: Suite, id: &str, name: &str, r: poncelet::Result<()>) -> Check {
    match r {
        Ok(()) => Check::new(s, id, name).flag(true, "ok"),
        Err(e) => Check::new(s, id, name).error(e),
    }
}

pub fn extremal_suite() -> Vec<Check> {
    let s = Suite::Extremal;
    let mut out = Vec::new();
    let fam21 = ConfocalFamily::new(2.0, 1.0).unwrap();
    match verify_zolotarev_n3(&fam21) {
        Ok(r) => {
            let id = "n3-a2b1";
            out.push(Check::new(s, id, "zolotarev-deviation").below(r.deviation, PROPORTIONALITY_TOL));
            out.push(Check::new(s, id, "zolotarev-endpoint-identity").below(r.identity_residual, IDENTITY_TOL));
            out.push(Check::new(s, id, "zolotarev-printed-identity").below(r.printed_identity_residual, IDENTITY_TOL));
            out.push(report_checks(s, id, "zolotarev", r.check()));
        }
        Err(e) => out.push(Check::new(s, "n3-a2b1", "zolotarev").error(e)),
    }
    for (id, a, case) in [("n4-a2b1-e", 2.0, AkhiezerCase::E), ("n4-a3b1-h", 3.0, AkhiezerCase::H)] {
        let fam = ConfocalFamily::new(a, 1.0).unwrap();
        out.push(match verify_akhiezer_n4(&fam, case) {
            Ok(r) => {
                let c = Check::new(s, id, "akhiezer-n4");
                let mut c = c.below(r.deviation, PROPORTIONALITY_TOL);
                if let Err(e) = r.check() {
                    c.passed = false;
                    c.detail = Some(e.to_string());
                }
                c
            }
            Err(e) => Check::new(s, id, "akhiezer-n4").error(e),
        });
    }
    let rest: Vec<Check> = fixtures()
        .par_iter()
        .filter_map(|f| f.akhiezer.map(|(l, case)| (f, l, case)))
        .map(|(f, l, case)| {
            let name = format!("akhiezer-n{}-l{}", f.n, l);
            match verify_akhiezer_pn(&f.family(), f.lambda0, f.n, l, case) {
                Ok(r) => {
                    let mut c = Check::new(s, &f.id, &name).below(r.deviation, PROPORTIONALITY_TOL);
                    if let Err(e) = r.check() {
                        c.passed = false;
                        c.detail = Some(e.to_string());
                    }
                    c
                }
                Err(e) => Check::new(s, &f.id, &name).error(e),
            }
        })
        .collect();
    out.extend(rest);
    out
}

pub fn discriminant_suite(opts: &VerifyOptions) -> Vec<Check> {
    let s = Suite::Discriminant;
    ExampleId::ALL
        .par_iter()
        .map(|&id| {
            let c = Check::new(s, id.name(), "discriminant");
            match verify_discriminant_example_seeded(id, opts.trials, opts.seed) {
                Ok(r) => {
                    let mut detail = format!("{}/{} exact matches", r.exact_matches, r.trials);
                    if let Some(k) = &r.stable_ratio {
                        detail.push_str(&format!(", stable ratio {k}"));
                    }
                    if let Some(w) = &r.witness {
                        detail.push_str(&format!(
                            ", first mismatch at ({}, {}): computed {} vs printed {}",
                            w.point.0, w.point.1, w.computed, w.printed
                        ));
                    }
                    c.flag(r.passed, detail)
                }
                Err(e) => c.error(e),
            }
        })
        .collect()
}

fn family_id(a: f64, b: f64) -> String {
    format!("family-a{a}b{b}")
}

pub fn rotation_suite() -> Vec<Check> {
    let s = Suite::Rotation;
    let fx = fixtures();
    let mut out: Vec<Check> = fx
        .par_iter()
        .flat_map(|f| {
            let fam = f.family();
            let (m0, m1) = f.winding;
            let rho = match rotation_number(&fam, f.lambda0) {
                Ok(r) => Check::new(s, &f.id, "rho").below(r.rho - m1 as f64 / m0 as f64, ROTATION_TOL),
                Err(e) => Check::new(s, &f.id, "rho").error(e),
            };
            let ident = match winding_identity_residual(&fam, f.lambda0, m0, m1) {
                Ok(r) => Check::new(s, &f.id, "winding-identity").below(r, ROTATION_TOL),
                Err(e) => Check::new(s, &f.id, "winding-identity").error(e),
            };
            vec![rho, ident]
        })
        .collect();
    let families: BTreeSet<(u64, u64)> = fx.iter().map(|f| (f.a.to_bits(), f.b.to_bits())).collect();
    let scans: Vec<Check> = families
        .par_iter()
        .flat_map(|&(a, b)| {
            let (a, b) = (f64::from_bits(a), f64::from_bits(b));
            let fam = ConfocalFamily::new(a, b).unwrap();
            [
                (Side::EllipseSide, "monotone-ellipse"),
                (Side::HyperbolaSide, "monotone-hyperbola"),
            ]
            .into_iter()
            .map(|(side, name)| {
                let c = Check::new(s, &family_id(a, b), name);
                match monotonicity_scan(&fam, side, MONOTONICITY_SAMPLES) {
                    Ok(r) => c.flag(true, format!("increasing: {}", r.increasing)),
                    Err(e) => c.error(e),
                }
            })
            .collect::<Vec<_>>()
        })
        .collect();
    out.extend(scans);
    out
}

/// JSON formatter printing every float with 17 significant digits.
struct SigDigits;

impl serde_json::ser::Formatter for SigDigits {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        write!(w, "{value:.16e}")
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SigDigits);
    value.serialize(&mut ser).expect("serializable report");
    buf.push(b'\n');
    String::from_utf8(buf).expect("utf-8 json")
}
