//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use arakheight::arakelov::{restrict_to_infinity, Correction};
use arakheight::chow::{
    chow_boundedness, chow_form, chow_injectivity_check, fs_sup_norm, supnorm_vs_mean, MeanVariant,
};
use arakheight::heights::{
    certify_fairly_large, compare_identity, gram_det_monotone, height_point_with,
};
use arakheight::isogeny::{counterexample_heights, expected_height, Verdict};
use arakheight::northcott::{enumerate_bounded, northcott_report, point_set};
use arakheight::*;
use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use rayon::prelude::*;

use common::*;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// 1: `deg(ĉ_1(O(1)_FS)^2)` on `P^1_Z` is 1/2.
fn engine_anchor() -> Outcome {
    let prob = IntersectionProblem::full(1, vec![MetrizedBundle::fs(1, 0), MetrizedBundle::fs(1, 0)]);
    let v = intersection_degree(&prob, 1e-10).unwrap();
    let err = (v.numeric - 0.5).abs();
    outcome(err <= 1e-8, format!("value {} (|err| = {err:.1e})", v.numeric))
}

/// 2: heights under the half-twist polarizations are `e_i log 2` exactly.
fn degenerate_exact_formula() -> Outcome {
    let mut r = rng(2);
    let engine = Engine::default();
    let mut checked = 0;
    let mut bad = Vec::new();
    for _ in 0..20 {
        let d = r.gen_range(1..=3);
        let n = r.gen_range(1..=2);
        let p = random_point(&mut r, n, d, 4, 20);
        for i in 1..=d {
            let pol = Polarization::half_twist(d, i).unwrap();
            let v = height_point_with(&engine, &p, &pol, 1e-6).unwrap();
            let e = p.multidegree()[i - 1] as i64;
            let want = LogLinear::log_scaled(&BigInt::from(2), BigRational::from_integer(e.into()));
            checked += 1;
            if v.symbolic.as_ref() != Some(&want) || v.error_bound != 0.0 {
                bad.push(format!("{p} slot {i}: {v}"));
            }
        }
    }
    outcome(bad.is_empty(), format!("{checked} heights symbolic; mismatches: {bad:?}"))
}

/// 3: `h^{B0} = d! h^{B1} + (d!/2) Σ h^{B_ij}` at `d = 2`.
fn comparison_identity() -> Outcome {
    let mut r = rng(3);
    let engine = Engine::default();
    let points: Vec<ProjPoint> = (0..10).map(|_| random_point(&mut r, 1, 2, 3, 9)).collect();
    let reports: Vec<_> = points
        .par_iter()
        .map(|p| (p.clone(), compare_identity(&engine, p, 1e-4).unwrap()))
        .collect();
    let mut worst: f64 = 0.0;
    let mut bad = Vec::new();
    for (p, rep) in &reports {
        let gap = rep.numeric_gap();
        worst = worst.max(gap);
        if gap > 1e-4f64.max(rep.combined_bound()) || !rep.residual.is_symbolic_zero() {
            bad.push(format!("{p}: gap {gap:.2e}, residual {}", rep.residual));
        }
    }
    outcome(
        bad.is_empty(),
        format!("10 points, max |LHS - RHS| = {worst:.2e}, residual forms cancel exactly; failures {bad:?}"),
    )
}

/// 4: terms with two squared Fubini–Study factors vanish exactly.
fn claim_vanishing() -> Outcome {
    let mut r = rng(4);
    let engine = Engine::default();
    let d = 4;
    let mut bad = Vec::new();
    for _ in 0..50 {
        let n = r.gen_range(1..=2);
        let p = random_point(&mut r, n, d, 2, 9);
        let mut idx: Vec<usize> = (0..d).collect();
        for k in (1..d).rev() {
            idx.swap(k, r.gen_range(0..=k));
        }
        let (i, j) = (idx[0], idx[1]);
        let mut classes = vec![MetrizedBundle::pullback(&p)];
        for f in [i, i, j, j] {
            classes.push(MetrizedBundle::fs(d, f));
        }
        let v = engine.intersection_degree(&IntersectionProblem::full(d, classes), 1e-6).unwrap();
        if !v.is_symbolic_zero() {
            bad.push(format!("{p} at ({i},{j}): {v}"));
        }
    }
    outcome(bad.is_empty(), format!("50 patterns at d = 4; nonzero: {bad:?}"))
}

/// Independent brute-force set of `P^1(Q(z))` points with `h <= bound`:
/// every coprime pair of degree at most 2 and coefficients in `[-3, 3]`.
fn oracle_set(bound: f64) -> BTreeSet<Vec<MultiPoly>> {
    let width = 7usize;
    let total = width.pow(6);
    (0..total)
        .into_par_iter()
        .filter_map(|mut idx| {
            let mut coeff = || {
                let c = (idx % width) as i64 - 3;
                idx /= width;
                BigInt::from(c)
            };
            let tuple: Vec<MultiPoly> = (0..2)
                .map(|_| MultiPoly::from_terms(1, (0..3).map(|t| (vec![t], coeff())).collect::<Vec<_>>()))
                .collect();
            if tuple.iter().all(|f| f.is_zero()) {
                return None;
            }
            let nz = normalize(&tuple).ok()?;
            if nz.point.coords() != tuple.as_slice() {
                return None;
            }
            let e = nz.point.multidegree()[0];
            if fs_height_1d(&tuple, e, 16, 12) + e as f64 / 2.0 > bound + 0.3 {
                return None;
            }
            let h = fs_height_1d(&tuple, e, 4000, 256) + e as f64 / 2.0;
            (h <= bound + 1e-10).then_some(tuple)
        })
        .collect()
}

/// 5: Northcott enumeration on `P^1` over `Q(z)`.
fn northcott_enumeration() -> Outcome {
    let engine = Engine::default();
    let cfg = NorthcottConfig::default();
    let fs = Polarization::fs(1);
    let e04 = enumerate_bounded(&engine, 1, 1, 0.4, &fs, &cfg).unwrap();
    let want: BTreeSet<Vec<MultiPoly>> = [[1, 0], [0, 1], [1, 1], [1, -1]]
        .iter()
        .map(|c| ProjPoint::from_integers(1, c).unwrap().coords().to_vec())
        .collect();
    let ok04 = point_set(&e04) == want && e04.undecided.is_empty();
    let e051 = enumerate_bounded(&engine, 1, 1, 0.51, &fs, &cfg).unwrap();
    let oracle = oracle_set(0.51);
    let ok051 = point_set(&e051) == oracle && e051.undecided.is_empty();
    let ladder = northcott_report(&engine, 1, 1, &[0.0, 0.2, 0.4, 0.51], &fs, &cfg).unwrap();
    let counts: Vec<usize> = ladder.iter().map(|l| l.count).collect();
    let monotone = counts.windows(2).all(|w| w[0] <= w[1]);
    outcome(
        ok04 && ok051 && monotone,
        format!(
            "M = 0.4: {} points (expected set {}); M = 0.51: {} points, oracle {} ({}); ladder counts {counts:?}",
            e04.points.len(),
            if ok04 { "matches" } else { "differs" },
            e051.points.len(),
            oracle.len(),
            if ok051 { "equal" } else { "differ" },
        ),
    )
}

/// 6: `e_i log 2 <= 2 h_FS(P)` on random points.
fn degree_bound() -> Outcome {
    let mut r = rng(6);
    let engine = Engine::default();
    let points: Vec<ProjPoint> = (0..200)
        .map(|k| {
            let d = if k % 4 == 0 { 2 } else { 1 };
            let n = r.gen_range(1..=2);
            random_point(&mut r, n, d, 3, 12)
        })
        .collect();
    let violations: Vec<String> = points
        .par_iter()
        .filter_map(|p| {
            let d = p.num_vars();
            let tol = if d == 1 { 1e-8 } else { 1e-4 };
            let h = height_point_with(&engine, p, &Polarization::fs(d), tol).unwrap();
            p.multidegree().iter().enumerate().find_map(|(i, &e)| {
                let lhs = e as f64 * std::f64::consts::LN_2;
                (lhs > 2.0 * h.numeric + 2.0 * h.error_bound)
                    .then(|| format!("{p}: e_{} log 2 = {lhs:.4} > 2h = {:.4}", i + 1, 2.0 * h.numeric))
            })
        })
        .collect();
    outcome(violations.is_empty(), format!("200 points, {} violations {violations:?}", violations.len()))
}

/// 7: the isogeny counterexample and its detection.
fn counterexample() -> Outcome {
    let zero = counterexample_heights(30, &q(0, 1)).unwrap();
    let all_zero = zero.rows.iter().all(|r| r.height.is_zero()) && zero.verdict == Verdict::NorthcottFails;
    let half = counterexample_heights(30, &q(1, 2)).unwrap();
    let grows = half.rows.iter().all(|r| r.height == expected_height(r.n, &q(1, 2)))
        && half.verdict == Verdict::HeightsGrow;
    // the degenerate slot has zero self-intersection and is rejected
    let engine = Engine::default();
    let slot = MetrizedBundle::twist(1, &q(1, 2)).unwrap();
    let c = engine
        .intersection_degree(&IntersectionProblem::full(1, vec![slot.clone(), slot]), 1e-9)
        .unwrap();
    let detected = c.is_symbolic_zero()
        && counterexample_heights(3, &q(0, 1)).unwrap().verdict == Verdict::NorthcottFails
        && certify_fairly_large(&Polarization::degenerate(1, 1, &q(1, 2)).unwrap()).is_err()
        && certify_fairly_large(&Polarization::fs(1)).is_ok();
    outcome(
        all_zero && grows && detected,
        format!("c = 0: 31 zeros ({all_zero}); c = 1/2: 4^n/2 exactly ({grows}); degenerate slot rejected ({detected})"),
    )
}

/// 8: coefficient bound against the mean on `P^1 × P^1`.
fn coefficient_bound() -> Outcome {
    let mut r = rng(8);
    let quad = Quadrature::default();
    let sections: Vec<(MultiPoly, Vec<u32>)> = (0..100)
        .map(|_| {
            let degs = vec![r.gen_range(0..=3), r.gen_range(0..=3)];
            loop {
                let terms = r.gen_range(1..=5);
                let t: Vec<(Vec<u32>, BigInt)> = (0..terms)
                    .map(|_| {
                        (
                            vec![r.gen_range(0..=degs[0]), r.gen_range(0..=degs[1])],
                            BigInt::from(r.gen_range(-50..=50)),
                        )
                    })
                    .collect();
                let s = MultiPoly::from_terms(2, t);
                if !s.is_zero() {
                    break (s, degs);
                }
            }
        })
        .collect();
    let violations: Vec<String> = sections
        .par_iter()
        .filter_map(|(s, degs)| {
            let rep = supnorm_vs_mean(&quad, s, degs, MeanVariant::Log, 1e-6).unwrap();
            (!rep.holds).then(|| format!("{s} in O{degs:?}: |s| = {} > {}", rep.coeff_max, rep.constant * rep.mean))
        })
        .collect();
    let x0x1 = fs_sup_norm(&MultiPoly::var(1, 0), &[2]);
    let sup_ok = (x0x1 - 0.5).abs() <= 1e-9;
    outcome(
        violations.is_empty() && sup_ok,
        format!("100 sections, {} violations; sup‖X0 X1‖_FS = {x0x1:.12}", violations.len()),
    )
}

fn random_cycle(r: &mut impl Rng, max_coef: i64) -> ZeroCycle {
    loop {
        let parts = r.gen_range(1..=2);
        let mut comps = Vec::new();
        let mut deg = 0;
        for _ in 0..parts {
            if deg >= 3 {
                break;
            }
            if r.gen_bool(0.5) || deg == 2 {
                let a = r.gen_range(-max_coef..=max_coef);
                let b = r.gen_range(-max_coef..=max_coef);
                if let Ok(p) = ProjPoint::from_integers(0, &[a, b]) {
                    comps.push((1, PointSpec::Point { point: p }));
                    deg += 1;
                }
            } else {
                let k = 2;
                let c: Vec<i64> = (0..=k).map(|_| r.gen_range(-max_coef..=max_coef)).collect();
                let s = format!("{}*X0^2 + {}*X0*X1 + {}*X1^2", c[0], c[1], c[2]).replace("+ -", "- ");
                if let Ok(form) = BinaryForm::parse(&s, Some(0)) {
                    comps.push((1, PointSpec::Block { form }));
                    deg += 2;
                }
            }
        }
        if let Ok(z) = ZeroCycle::new(1, 0, comps) {
            return z;
        }
    }
}

/// 9: Chow forms: multiplicativity, injectivity, boundedness.
fn chow_suite() -> Outcome {
    let mut r = rng(9);
    let mut mult_bad = 0;
    for _ in 0..50 {
        let a = random_cycle(&mut r, 30);
        let b = random_cycle(&mut r, 30);
        let sum = a.add(&b).unwrap();
        let lhs = chow_form(&sum).unwrap();
        let rhs = chow_form(&a).unwrap().mul(&chow_form(&b).unwrap()).unwrap();
        if lhs != rhs {
            mult_bad += 1;
        }
    }
    let sample: Vec<ZeroCycle> = (0..50).map(|_| random_cycle(&mut r, 5)).collect();
    let inj = chow_injectivity_check(&sample).unwrap();
    let family: Vec<ZeroCycle> = (0..200).map(|_| random_cycle(&mut r, 1000)).collect();
    let b = chow_boundedness(&Engine::default(), &family, &Polarization::fs(0), 1e-8).unwrap();
    outcome(
        mult_bad == 0 && inj.injective() && b.deviation < 0.2,
        format!(
            "multiplicativity failures {mult_bad}/50; {} distinct cycles -> {} distinct forms; fitted C = {:.4}, validation {:.4} (deviation {:.1}%)",
            inj.distinct_cycles,
            inj.distinct_forms,
            b.fitted,
            b.validation,
            100.0 * b.deviation
        ),
    )
}

fn random_psd(r: &mut impl Rng, n: usize, rank: usize) -> DMatrix<f64> {
    let a = DMatrix::from_fn(n, rank, |_, _| r.gen_range(-2.0..2.0));
    &a * a.transpose()
}

/// 10: Gram determinants are monotone.
fn gram_monotone() -> Outcome {
    let mut r = rng(10);
    let mut violations = 0;
    for _ in 0..1000 {
        let n = r.gen_range(1..=5);
        let k = r.gen_range(1..=n);
        let g = random_psd(&mut r, n, k);
        let k = r.gen_range(1..=n);
        let g2 = &g + random_psd(&mut r, n, k);
        let rep = gram_det_monotone(&g, &g2).unwrap();
        if !rep.monotone {
            violations += 1;
        }
    }
    outcome(violations == 0, format!("1000 instances, {violations} violations"))
}

/// 11: restriction ledgers agree with the engine's direct collapse to `∞`.
fn ledger_consistency() -> Outcome {
    let mut r = rng(11);
    let engine = Engine::default();
    let mut problems = Vec::new();
    while problems.len() < 100 {
        let d = r.gen_range(1..=2);
        let i = r.gen_range(0..d);
        // leading coefficients in z_i share an integer and a polynomial factor
        let content = BigInt::from([1, 2, 6, 12, 5][r.gen_range(0..5)]);
        let g = if d == 2 && r.gen_bool(0.5) {
            random_poly(&mut r, d, 1, 2, 3).remap_vars(d, &[0, 1])
        } else {
            MultiPoly::one(d)
        };
        let g = if g.is_zero() || g.depends_on(i) { MultiPoly::one(d) } else { g };
        let e = r.gen_range(1..=2);
        let coords: Vec<MultiPoly> = (0..=r.gen_range(1..=2))
            .map(|_| {
                let mut lead_exp = vec![0; d];
                lead_exp[i] = e;
                let h = random_poly(&mut r, d, 1, 2, 4);
                let h = strip_var(&h, i);
                let lead = &(&MultiPoly::monomial(d, lead_exp, content.clone()) * &g) * &h;
                &lead + &strip_var(&random_poly(&mut r, d, e - 1, 3, 5), i).pow(1)
            })
            .collect();
        let Ok(p) = ProjPoint::new(coords) else { continue };
        if p.multidegree()[i] == 0 {
            continue;
        }
        let mut classes = vec![MetrizedBundle::pullback(&p)];
        classes.extend((0..d).map(|k| MetrizedBundle::fs(d, k)));
        problems.push((p, i, IntersectionProblem::full(d, classes)));
    }
    let mismatches: Vec<String> = problems
        .par_iter()
        .filter_map(|(p, i, prob)| {
            let rest = match restrict_to_infinity(prob, *i) {
                Ok(r) => r,
                Err(e) => return Some(format!("{p} at z{}: {e}", i + 1)),
            };
            let mut direct = prob.clone();
            direct.classes.remove(1 + i);
            direct.base[*i] = BaseFactor::infinity();
            let a = rest.value(&engine, 1e-7).unwrap();
            let b = engine.intersection_degree(&direct, 1e-7).unwrap();
            let values_agree = (a.numeric - b.numeric).abs() <= a.error_bound + b.error_bound + 1e-12;
            // the polynomial ledger of the point names the same content and gcd
            let (_, ledger) = p.leading_restriction(*i).unwrap();
            let mut content = BigInt::from(1);
            let mut gcd = None;
            for c in &rest.corrections {
                match c {
                    Correction::Vertical { prime, multiplicity, .. } => {
                        content *= num_traits::pow(prime.clone(), *multiplicity as usize)
                    }
                    Correction::Horizontal { gcd: g, .. } => gcd = Some(g.clone()),
                }
            }
            let ledger_gcd = ledger.gcd.clone();
            let gcd_agrees = match &gcd {
                Some(g) => g.drop_var(*i) == ledger_gcd || (-g.drop_var(*i)) == ledger_gcd,
                None => ledger_gcd.is_constant(),
            };
            let ledger_agrees = content == ledger.content && gcd_agrees;
            (!values_agree || !ledger_agrees).then(|| {
                format!("{p} at z{}: {} vs {}, ledger {ledger_agrees}", i + 1, a.numeric, b.numeric)
            })
        })
        .collect();
    let corrected = problems
        .iter()
        .filter(|(_, i, prob)| restrict_to_infinity(prob, *i).is_ok_and(|r| !r.corrections.is_empty()))
        .count();
    outcome(
        mismatches.is_empty(),
        format!("100 problems ({corrected} with content or gcd corrections), mismatches {mismatches:?}"),
    )
}

/// Removes every occurrence of variable `i` by setting it to 1.
fn strip_var(f: &MultiPoly, i: usize) -> MultiPoly {
    let d = f.num_vars();
    MultiPoly::from_terms(
        d,
        f.terms()
            .map(|(m, c)| {
                let mut e = m.0.clone();
                e[i] = 0;
                (e, c.clone())
            })
            .collect::<Vec<_>>(),
    )
}

fn main() {
    type Criterion = (&'static str, fn() -> Outcome, Duration);
    let criteria: [Criterion; 11] = [
        ("engine convention anchor", engine_anchor, Duration::from_secs(1)),
        ("degenerate polarization exact formula", degenerate_exact_formula, Duration::from_secs(10)),
        ("comparison identity at d = 2", comparison_identity, Duration::from_secs(300)),
        ("vanishing of doubly squared terms", claim_vanishing, Duration::from_secs(1)),
        ("Northcott enumeration", northcott_enumeration, Duration::from_secs(120)),
        ("degree bound e_i log 2 <= 2h", degree_bound, Duration::from_secs(300)),
        ("isogeny counterexample", counterexample, Duration::from_secs(1)),
        ("coefficient bound vs mean", coefficient_bound, Duration::from_secs(120)),
        ("Chow forms", chow_suite, Duration::from_secs(300)),
        ("Gram determinant monotonicity", gram_monotone, Duration::from_secs(5)),
        ("restriction ledger consistency", ledger_consistency, Duration::from_secs(300)),
    ];
    let mut failed = 0;
    for (k, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let elapsed = start.elapsed();
        let pass = o.pass && elapsed <= *limit;
        if !pass {
            failed += 1;
        }
        println!(
            "[{}] {:>2}. {name}: {} ({:.2}s, limit {}s)",
            if pass { "PASS" } else { "FAIL" },
            k + 1,
            o.detail,
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
