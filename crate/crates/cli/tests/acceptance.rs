//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails or exceeds its time budget.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hardy_core::gauss::{self, CompoundSettings, ProofParams};
use hardy_core::hardy::{
    build_witness, classify_gauss, classify_gini, verify_witness, Sequence, Stride, TraceIter,
};
use hardy_core::means::{gini_mean, power_mean};
use hardy_core::{CompoundExponents, GiniParams, MeanDescriptor, PowerExponent, Sample};

type Outcome = Result<String, String>;

const SLACK: f64 = 1e-12;

/// Settles compound values well below the checked slack.
const TIGHT: CompoundSettings = CompoundSettings {
    rel_tolerance: 1e-15,
    max_iterations: 200,
};

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn compound(s: &Sample<'_>, exps: &[f64], cfg: &CompoundSettings) -> Result<f64, String> {
    let exps = CompoundExponents::new(exps.to_vec()).map_err(|e| e.to_string())?;
    gauss::compound_mean(s, &exps, cfg).map_err(|e| e.to_string())
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn remark_json(args: &[&str]) -> Result<serde_json::Value, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_hardy"))
        .arg("remark")
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    ensure!(out.status.success(), "remark exited with {}", out.status);
    serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())
}

fn field<'a>(v: &'a serde_json::Value, key: &str) -> Result<&'a str, String> {
    v[key]
        .as_str()
        .ok_or_else(|| format!("missing field {key}"))
}

fn remark_exponent() -> Outcome {
    let v = remark_json(&["3", "5", "1.5"])?;
    let three = field(&v, "exponent_3sf")?;
    let full: f64 = field(&v, "exponent")?.parse().map_err(|_| "bad exponent")?;
    ensure!(three == "0.0341", "3 s.f. exponent is {three}");
    ensure!(
        (full - 0.0341).abs() < 5e-4,
        "exponent {full} not within 5e-4 of 0.0341"
    );
    Ok(format!("exponent {three} ({full})"))
}

fn remark_threshold() -> Outcome {
    let v = remark_json(&["3", "5", "1.5"])?;
    let t: f64 = field(&v, "threshold_log10")?
        .parse()
        .map_err(|_| "bad threshold")?;
    let err = rel(t, 2.86e22);
    ensure!(
        err < 0.02,
        "threshold_log10 {t:e} is {err:e} away from 2.86e22"
    );
    Ok(format!(
        "threshold_log10 {} (relative gap {err:.1e})",
        field(&v, "threshold_log10_3sf")?
    ))
}

/// `r_100` for `G_{1,-1}` along `1/n`: `sqrt(sum a / sum 1/a) * 100`.
fn batch_r100() -> f64 {
    let sum_a: f64 = (1..=100).map(|n| 1.0 / n as f64).sum();
    let sum_inv: f64 = (1..=100).map(|n| n as f64).sum();
    (sum_a / sum_inv).sqrt() * 100.0
}

fn gini_growth() -> Outcome {
    let cfg = CompoundSettings::default();
    let mut checked = 0u64;
    let mut r100 = f64::NAN;
    for k in 1..=3u32 {
        let mean = MeanDescriptor::gini(1.0, -f64::from(k)).map_err(|e| e.to_string())?;
        let seq = Sequence::Harmonic;
        let rows = TraceIter::new(&mean, &seq, 1_000_000, Stride::Every, cfg)
            .map_err(|e| e.to_string())?;
        for row in rows {
            let row = row.map_err(|e| e.to_string())?;
            let bound = (row.n as f64).ln().powf(1.0 / f64::from(k + 1));
            ensure!(
                row.ratio >= bound,
                "k = {k}, n = {}: ratio {} < bound {bound}",
                row.n,
                row.ratio
            );
            if k == 1 && row.n == 100 {
                r100 = row.ratio;
            }
            checked += 1;
        }
    }
    let oracle = batch_r100();
    ensure!(
        rel(r100, oracle) < 1e-12,
        "trace r_100 {r100} vs batch {oracle}"
    );
    ensure!((r100 - 3.2050).abs() <= 1e-3, "r_100 = {r100}");
    Ok(format!("{checked} indices, r_100 = {r100:.6}"))
}

fn f_lower_bound_sweep() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x4f47);
    let (mut tau_checked, mut worst_g) = (0u32, 0f64);
    for i in 0..10_000 {
        let p: u32 = rng.gen_range(1..=4);
        let lambda = 10.0 * (1.0 - rng.gen::<f64>());
        let theta = 1.0 + 2.0 * (1.0 - rng.gen::<f64>());
        let b = 1.0 - rng.gen::<f64>();
        let ratio = (1e6f64.ln() * (1.0 - rng.gen::<f64>())).exp();
        let a = b * ratio;
        let pp = ProofParams::new(p, lambda, theta).map_err(|e| e.to_string())?;
        let ctx = || format!("tuple {i}: p={p} lambda={lambda} theta={theta} a={a} b={b}");

        let lb = gauss::check_f_lower_bound(a, b, &pp, &TIGHT).map_err(|e| e.to_string())?;
        ensure!(lb.holds, "{}: F = {} <= {}", ctx(), lb.lhs, lb.rhs);

        if a > theta * b {
            let (ta, tb) = gauss::tau(a, b, &pp).map_err(|e| e.to_string())?;
            let before = gauss::f_value(a, b, &pp, &TIGHT).map_err(|e| e.to_string())?;
            let after = gauss::f_value(ta, tb, &pp, &TIGHT).map_err(|e| e.to_string())?;
            ensure!(
                after <= before * (1.0 + SLACK),
                "{}: F(tau) = {after} > F = {before}",
                ctx()
            );
            tau_checked += 1;
        }

        let (ta, tb) = gauss::tau(a, b, &pp).map_err(|e| e.to_string())?;
        let g = gauss::g_value(a, b, &pp).map_err(|e| e.to_string())?;
        let gt = gauss::g_value(ta, tb, &pp).map_err(|e| e.to_string())?;
        let d = rel(gt, g);
        ensure!(d < 1e-12, "{}: G(tau) off by {d:e}", ctx());
        worst_g = worst_g.max(d);
    }
    Ok(format!(
        "10000 tuples, {tau_checked} with a > theta b, max |G(tau)-G|/G = {worst_g:.1e}"
    ))
}

/// First run of `r_n > 2C` reaching the sum condition, using the closed form
/// `r_n = sqrt(2 n H_n / (n + 1))` of `G_{1,-1}` along `1/n`.
fn witness_oracle(c: f64, cap: u64) -> Option<(u64, u64)> {
    let mut h = 0.0f64;
    let mut start: Option<(u64, f64)> = None;
    for n in 1..=cap {
        let before = h;
        h += 1.0 / n as f64;
        let nf = n as f64;
        let r = (2.0 * nf * h / (nf + 1.0)).sqrt();
        if r <= 2.0 * c {
            start = None;
            continue;
        }
        match start {
            None => start = Some((n, h)),
            Some((n0, head)) if before - head > head => return Some((n0, n)),
            Some(_) => {}
        }
    }
    None
}

fn witness_refutation() -> Outcome {
    let cfg = CompoundSettings::default();
    let mean = MeanDescriptor::gini(1.0, -1.0).map_err(|e| e.to_string())?;
    let cap = 10_000_000;
    let w = build_witness(&mean, &Sequence::Harmonic, 2.0, cap, &cfg).map_err(|e| e.to_string())?;
    let check = verify_witness(&w, &mean, &cfg).map_err(|e| e.to_string())?;
    ensure!(
        check.refuted && check.lhs > check.rhs,
        "not refuted: {check:?}"
    );
    let (n0, n1) = witness_oracle(2.0, cap).ok_or("oracle found no witness")?;
    ensure!(w.n0 == n0, "n0 = {} but the linear scan gives {n0}", w.n0);
    ensure!(
        w.n1.abs_diff(n1) <= 1,
        "n1 = {} but the linear scan gives {n1}",
        w.n1
    );
    Ok(format!(
        "n0 = {} (oracle {n0}), n1 = {} (oracle {n1}), lhs {:.4} > rhs {:.4}",
        w.n0, w.n1, check.lhs, check.rhs
    ))
}

fn agm(mut a: f64, mut b: f64) -> f64 {
    for _ in 0..100 {
        if (a - b).abs() <= 1e-15 * a.max(b) {
            break;
        }
        (a, b) = ((a + b) / 2.0, (a * b).sqrt());
    }
    (a + b) / 2.0
}

fn log_uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    (rng.gen_range(lo.ln()..hi.ln())).exp()
}

fn compound_oracles() -> Outcome {
    let cfg = CompoundSettings::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0xa6);
    let (mut worst_agm, mut worst_gm) = (0f64, 0f64);
    for _ in 0..100 {
        let (a, b) = (
            log_uniform(&mut rng, 1e-3, 1e3),
            log_uniform(&mut rng, 1e-3, 1e3),
        );
        let s = [a, b];
        let s = Sample::new(&s).map_err(|e| e.to_string())?;
        let x = compound(&s, &[1.0, 0.0], &cfg)?;
        let d = rel(x, agm(a, b));
        ensure!(d <= 1e-10, "AGM({a}, {b}): {x} vs {}", agm(a, b));
        worst_agm = worst_agm.max(d);
        let y = compound(&s, &[1.0, -1.0], &cfg)?;
        let d = rel(y, (a * b).sqrt());
        ensure!(d <= 1e-10, "AHM({a}, {b}): {y} vs {}", (a * b).sqrt());
        worst_gm = worst_gm.max(d);
    }
    for _ in 0..100 {
        let c = log_uniform(&mut rng, 1e-6, 1e6);
        let v = vec![c; rng.gen_range(1..12)];
        let exps: Vec<f64> = (0..rng.gen_range(1..6))
            .map(|_| rng.gen_range(-10.0..10.0))
            .collect();
        let s = Sample::new(&v).map_err(|e| e.to_string())?;
        let x = compound(&s, &exps, &cfg)?;
        ensure!(x == c, "constant {c} with exponents {exps:?} gives {x}");
    }
    Ok(format!(
        "max error vs AGM {worst_agm:.1e}, vs sqrt(ab) {worst_gm:.1e}, constants exact"
    ))
}

fn classifier_table() -> Outcome {
    let gini = [
        (-1.0, 0.5, true),
        (-1.0, 1.0, false),
        (-1.0, 1.5, false),
        (0.0, 0.5, true),
        (0.0, 1.0, false),
        (0.0, 1.5, false),
        (0.5, 1.0, false),
        (0.5, 1.5, false),
    ];
    for (p, q, hardy) in gini {
        for (x, y) in [(p, q), (q, p)] {
            let v = classify_gini(x, y).map_err(|e| e.to_string())?;
            ensure!(v.is_hardy == hardy, "gini({x}, {y}): got {v:?}");
        }
    }
    ensure!(
        classify_gini(0.5, 0.5).is_err(),
        "gini(0.5, 0.5) must be rejected"
    );
    let gauss: [(&[f64], bool); 4] = [
        (&[1.0, -5.0, -5.0, -5.0], false),
        (&[0.5, 0.0], true),
        (&[0.999], true),
        (&[1.0], false),
    ];
    for (exps, hardy) in gauss {
        let v = classify_gauss(exps).map_err(|e| e.to_string())?;
        ensure!(v.is_hardy == hardy, "gauss{exps:?}: got {v:?}");
    }
    Ok("8 Gini points (both orders) and 4 compounds".into())
}

struct Gen(ChaCha8Rng);

impl Gen {
    fn sample(&mut self) -> Vec<f64> {
        let n = self.0.gen_range(1..16);
        (0..n).map(|_| self.positive()).collect()
    }

    fn positive(&mut self) -> f64 {
        log_uniform(&mut self.0, 1e-3, 1e3)
    }

    fn exponent(&mut self) -> f64 {
        self.0.gen_range(-8.0..8.0)
    }

    fn gini(&mut self) -> (f64, f64) {
        loop {
            let (p, q) = (self.exponent(), self.exponent());
            if (p - q).abs() >= 0.05 {
                return (p, q);
            }
        }
    }

    /// Gini pair with `pq <= 0`, where Gini means increase in each argument.
    fn monotone_gini(&mut self) -> (f64, f64) {
        let p = self.0.gen_range(0.05..8.0);
        let q = -self.0.gen_range(0.0..8.0);
        if self.0.gen() {
            (p, q)
        } else {
            (q, p)
        }
    }

    fn exponents(&mut self) -> Vec<f64> {
        let n = self.0.gen_range(1..5);
        (0..n).map(|_| self.0.gen_range(-6.0..4.0)).collect()
    }

    fn mean(&mut self, monotone: bool) -> MeanDescriptor {
        match self.0.gen_range(0..3) {
            0 => MeanDescriptor::power(self.exponent()),
            1 => {
                let (p, q) = if monotone {
                    self.monotone_gini()
                } else {
                    self.gini()
                };
                MeanDescriptor::gini(p, q)
            }
            _ => MeanDescriptor::gauss(self.exponents()),
        }
        .expect("generated parameters are valid")
    }
}

fn eval(m: &MeanDescriptor, v: &[f64]) -> Result<f64, String> {
    let s = Sample::new(v).map_err(|e| e.to_string())?;
    m.evaluate_with(&s, &TIGHT).map_err(|e| e.to_string())
}

fn property_suites() -> Outcome {
    const CASES: usize = 1000;
    let mut g = Gen(ChaCha8Rng::seed_from_u64(0x5eed));
    let mut total = 0usize;
    for _ in 0..CASES {
        let m = g.mean(false);
        let v = g.sample();
        let x = eval(&m, &v)?;
        let (lo, hi) = v
            .iter()
            .fold((f64::INFINITY, 0f64), |(l, h), &a| (l.min(a), h.max(a)));
        ensure!(x >= lo && x <= hi, "internality: {m} {v:?} gives {x}");

        let m = g.mean(false);
        let c = g.positive();
        let n = g.0.gen_range(1..40);
        let x = eval(&m, &vec![c; n])?;
        ensure!(x == c, "idempotence: {m} at {c} gives {x}");

        let m = g.mean(false);
        let v = g.sample();
        let t = g.positive();
        let scaled: Vec<f64> = v.iter().map(|a| a * t).collect();
        let (lhs, rhs) = (eval(&m, &scaled)?, t * eval(&m, &v)?);
        ensure!(
            rel(lhs, rhs) <= SLACK,
            "homogeneity: {m} {v:?} t={t}: {lhs} vs {rhs}"
        );

        let m = g.mean(true);
        let v = g.sample();
        let mut w = v.clone();
        let i = g.0.gen_range(0..w.len());
        w[i] *= 1.0 + g.0.gen_range(0.0..2.0);
        let (before, after) = (eval(&m, &v)?, eval(&m, &w)?);
        ensure!(
            after >= before * (1.0 - SLACK),
            "argument monotonicity: {m} {v:?} -> {w:?}"
        );

        let v = g.sample();
        let s = Sample::new(&v).map_err(|e| e.to_string())?;
        let (a, b) = (g.exponent(), g.exponent());
        let (lo, hi) = (a.min(b), a.max(b));
        let pm = |l: f64| power_mean(&s, PowerExponent::new(l).expect("finite exponent"));
        ensure!(
            pm(lo) <= pm(hi) * (1.0 + SLACK),
            "power exponent monotonicity: {v:?} {lo} {hi}"
        );

        let v = g.sample();
        let s = Sample::new(&v).map_err(|e| e.to_string())?;
        let (p, q) = g.gini();
        let (dp, dq) = (g.0.gen_range(0.0..3.0), g.0.gen_range(0.0..3.0));
        let (p2, q2) = (p + dp, q + dq);
        let gp = GiniParams::new(p, q).map_err(|e| e.to_string())?;
        let x = gini_mean(&s, gp);
        if (p2 - q2).abs() >= 0.05 {
            let y = gini_mean(&s, GiniParams::new(p2, q2).map_err(|e| e.to_string())?);
            ensure!(
                x <= y * (1.0 + SLACK),
                "Gini parameter monotonicity: {v:?} ({p},{q}) -> ({p2},{q2})"
            );
        }
        let y = gini_mean(&s, gp.swapped());
        ensure!(rel(x, y) <= SLACK, "Gini symmetry: {v:?} ({p},{q})");

        let v = g.sample();
        let exps = g.exponents();
        let raised: Vec<f64> = exps.iter().map(|l| l + g.0.gen_range(0.0..2.0)).collect();
        let s = Sample::new(&v).map_err(|e| e.to_string())?;
        let x = compound(&s, &exps, &TIGHT)?;
        let y = compound(&s, &raised, &TIGHT)?;
        ensure!(
            x <= y * (1.0 + SLACK),
            "compound monotonicity: {v:?} {exps:?} -> {raised:?}"
        );

        total += 8;
    }
    Ok(format!("8 suites x {CASES} instances, {total} checks"))
}

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let criteria = [
        Criterion {
            id: 1,
            name: "remark exponent",
            budget: Duration::from_secs(1),
            run: remark_exponent,
        },
        Criterion {
            id: 2,
            name: "remark threshold",
            budget: Duration::from_secs(1),
            run: remark_threshold,
        },
        Criterion {
            id: 3,
            name: "Gini growth along 1/n",
            budget: Duration::from_secs(30),
            run: gini_growth,
        },
        Criterion {
            id: 4,
            name: "F > G sweep",
            budget: Duration::from_secs(60),
            run: f_lower_bound_sweep,
        },
        Criterion {
            id: 5,
            name: "witness refutation",
            budget: Duration::from_secs(60),
            run: witness_refutation,
        },
        Criterion {
            id: 6,
            name: "compound oracles",
            budget: Duration::from_secs(5),
            run: compound_oracles,
        },
        Criterion {
            id: 7,
            name: "classifier truth table",
            budget: Duration::from_secs(1),
            run: classifier_table,
        },
        Criterion {
            id: 8,
            name: "property suites",
            budget: Duration::from_secs(60),
            run: property_suites,
        },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let took = start.elapsed();
        let outcome = outcome.and_then(|msg| {
            if took <= c.budget {
                Ok(msg)
            } else {
                Err(format!("{msg}; took {took:.2?}, budget {:?}", c.budget))
            }
        });
        match outcome {
            Ok(msg) => println!("PASS [{}] {}: {msg} ({took:.2?})", c.id, c.name),
            Err(msg) => {
                failed += 1;
                println!("FAIL [{}] {}: {msg} ({took:.2?})", c.id, c.name);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
