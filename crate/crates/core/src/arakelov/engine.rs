//! Recursive peeling evaluator.

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::form::{LinearForm, RigorousValue};
use super::mixed::permanent;
use super::{BaseFactor, IntersectionProblem, SectionClass};
use crate::error::{Error, Result};
use crate::fsquad::{Integrand, Quadrature};
use crate::polyring::{factor_integer, normalize, MultiPoly};
use crate::symbolic::LogLinear;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EngineConfig {
    /// Priority of base factors when choosing which Fubini–Study atom to
    /// peel; factors not listed follow in increasing index order.
    pub peel_order: Option<Vec<usize>>,
    /// Disable the sub-problem memo table.
    pub no_memo: bool,
}

/// One node of the peeling tree.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceNode {
    pub label: String,
    pub value: String,
    pub children: Vec<TraceNode>,
}

#[derive(Debug, Default)]
pub struct Engine {
    quad: Quadrature,
    config: EngineConfig,
    memo: Mutex<HashMap<String, LinearForm>>,
}

#[derive(Clone, Debug)]
enum Atom {
    Fs(usize),
    Const(LogLinear),
    Section(SectionClass),
}

impl Atom {
    fn sort_key(&self) -> (u8, usize, String) {
        match self {
            Atom::Fs(i) => (0, *i, String::new()),
            Atom::Const(c) => (1, 0, c.to_string()),
            Atom::Section(s) => (2, 0, section_key(s)),
        }
    }

    fn is_section(&self) -> bool {
        matches!(self, Atom::Section(_))
    }

    fn is_const(&self) -> bool {
        matches!(self, Atom::Const(_))
    }
}

fn section_key(s: &SectionClass) -> String {
    let coords: Vec<String> = s.coords.iter().map(|c| c.to_string()).collect();
    format!("S[({}) deg {:?}]", coords.join(", "), s.degree)
}

fn atom_label(a: &Atom) -> String {
    match a {
        Atom::Fs(i) => format!("FS(z{})", i + 1),
        Atom::Const(c) => format!("Const({c})"),
        Atom::Section(s) => section_key(s),
    }
}

fn atoms_label(atoms: &[Atom]) -> String {
    atoms.iter().map(atom_label).collect::<Vec<_>>().join(" · ")
}

#[derive(Clone, Debug)]
struct Ctx {
    m: usize,
    free: Vec<bool>,
    fiber: Option<BigInt>,
}

impl Ctx {
    fn free_factors(&self) -> Vec<usize> {
        (0..self.m).filter(|&i| self.free[i]).collect()
    }

    fn key(&self, atoms: &[Atom]) -> String {
        let keys: Vec<String> = atoms
            .iter()
            .map(|a| {
                let k = a.sort_key();
                format!("{}:{}:{}", k.0, k.1, k.2)
            })
            .collect();
        format!("{}|{:?}|{:?}|{}", self.m, self.free, self.fiber, keys.join(";"))
    }
}

type Out = (LinearForm, Option<TraceNode>);

fn half() -> BigRational {
    BigRational::new(1.into(), 2.into())
}

fn rat(v: i128) -> BigRational {
    BigRational::from_integer(v.into())
}

fn half_log(n: &BigInt) -> LogLinear {
    LogLinear::log_scaled(n, half())
}

/// Rows of the geometric classes of `atoms` restricted to the columns `cols`.
fn rows(atoms: &[&Atom], cols: &[usize]) -> Vec<Vec<i64>> {
    atoms
        .iter()
        .map(|a| match a {
            Atom::Fs(j) => cols.iter().map(|c| i64::from(c == j)).collect(),
            Atom::Section(s) => cols.iter().map(|&c| i64::from(s.degree[c])).collect(),
            Atom::Const(_) => vec![0; cols.len()],
        })
        .collect()
}

fn perm(atoms: &[&Atom], cols: &[usize]) -> i128 {
    permanent(&rows(atoms, cols))
}

/// Collapses factor `i` to the rational point `(x0 : x1)`.
fn fix(atoms: Vec<Atom>, i: usize, x0: &BigInt, x1: &BigInt) -> Vec<Atom> {
    atoms
        .into_iter()
        .map(|a| match a {
            Atom::Fs(j) if j == i => Atom::Const(half_log(&(x0 * x0 + x1 * x1))),
            Atom::Section(s) => {
                let e = s.degree[i];
                let coords = s
                    .coords
                    .iter()
                    .map(|c| c.specialize_homogeneous(i, e, x0, x1))
                    .collect();
                let mut degree = s.degree;
                degree[i] = 0;
                Atom::Section(SectionClass { coords, degree })
            }
            other => other,
        })
        .collect()
}

/// `∫ (1/2) log sum |T_k|^2 dμ_FS` as a linear form: the integer content
/// and polynomial gcd are split off exactly.
fn mahler(tuple: &[MultiPoly]) -> Result<LinearForm> {
    let nz = normalize(tuple)?;
    let mut out = LinearForm::exact(LogLinear::log(&nz.content));
    if !nz.gcd.is_constant() {
        out.add_integral(
            Integrand::LogAbs {
                poly: nz.gcd.clone().with_sign_positive(),
            },
            BigRational::one(),
        );
    }
    if let Some(c) = nz.point.constant_coords() {
        let n: BigInt = c.iter().map(|x| x * x).sum();
        out.add_exact(&half_log(&n));
    } else {
        let mut polys: Vec<MultiPoly> = nz
            .point
            .coords()
            .iter()
            .filter(|p| !p.is_zero())
            .map(|p| p.clone().with_sign_positive())
            .collect();
        polys.sort();
        if is_one_and_variable(&polys) {
            // ∫ log(1 + |z|^2) dμ_FS = 1
            out.add_exact(&LogLinear::rational(half()));
        } else {
            out.add_integral(Integrand::LogSumSq { polys }, half());
        }
    }
    Ok(out)
}

fn is_one_and_variable(polys: &[MultiPoly]) -> bool {
    let [a, b] = polys else { return false };
    let n = a.num_vars();
    a.constant_value().is_some_and(|c| c.is_one())
        && (0..n).any(|j| *b == MultiPoly::var(n, j))
}

impl Engine {
    pub fn new(quad: Quadrature) -> Self {
        Engine {
            quad,
            config: EngineConfig::default(),
            memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn with_config(mut self, config: EngineConfig) -> Self {
        self.config = config;
        self
    }

    pub fn quadrature(&self) -> &Quadrature {
        &self.quad
    }

    pub fn config(&self) -> &EngineConfig {
        &self.config
    }

    /// The exact linear form of the intersection number.
    pub fn form(&self, prob: &IntersectionProblem) -> Result<LinearForm> {
        Ok(self.run(prob, false)?.0)
    }

    /// The linear form together with the full peeling tree.
    pub fn explain(&self, prob: &IntersectionProblem) -> Result<(LinearForm, TraceNode)> {
        let (f, t) = self.run(prob, true)?;
        Ok((f, t.expect("trace requested")))
    }

    pub fn intersection_degree(&self, prob: &IntersectionProblem, tol: f64) -> Result<RigorousValue> {
        self.form(prob)?.evaluate(&self.quad, tol)
    }

    fn run(&self, prob: &IntersectionProblem, ex: bool) -> Result<Out> {
        prob.validate()?;
        let ctx = Ctx {
            m: prob.m,
            free: prob.base.iter().map(|f| *f == BaseFactor::Free).collect(),
            fiber: prob.fiber.clone(),
        };
        let mut total = LinearForm::zero();
        let mut children = Vec::new();
        for (q, atoms) in expand(prob) {
            let mut atoms = atoms;
            for (i, f) in prob.base.iter().enumerate() {
                if let BaseFactor::Point { x0, x1 } = f {
                    atoms = fix(atoms, i, x0, x1);
                }
            }
            let (f, t) = self.eval(atoms, &ctx, ex)?;
            total.add_scaled(&f, &q);
            if let Some(t) = t {
                children.push(TraceNode {
                    label: format!("coefficient {q}"),
                    value: f.to_string(),
                    children: vec![t],
                });
            }
        }
        let trace = ex.then(|| TraceNode {
            label: "problem".into(),
            value: total.to_string(),
            children,
        });
        Ok((total, trace))
    }

    fn eval(&self, mut atoms: Vec<Atom>, ctx: &Ctx, ex: bool) -> Result<Out> {
        atoms.sort_by_key(|a| a.sort_key());
        let memo = !ex && !self.config.no_memo;
        let key = memo.then(|| ctx.key(&atoms));
        if let Some(k) = &key {
            if let Some(f) = self.memo.lock().expect("memo lock").get(k) {
                return Ok((f.clone(), None));
            }
        }
        let out = self.eval_inner(atoms, ctx, ex)?;
        if let Some(k) = key {
            self.memo.lock().expect("memo lock").insert(k, out.0.clone());
        }
        Ok(out)
    }

    fn eval_inner(&self, mut atoms: Vec<Atom>, ctx: &Ctx, ex: bool) -> Result<Out> {
        let free = ctx.free_factors();
        let needed = free.len() + usize::from(ctx.fiber.is_none());
        if atoms.len() != needed {
            return Err(Error::Invalid(format!(
                "{} classes on a cycle of arithmetic dimension {needed}",
                atoms.len()
            )));
        }
        if atoms.iter().filter(|a| a.is_section()).count() > 1 {
            return Err(Error::UnsupportedShape(
                "more than one section-pullback class".into(),
            ));
        }
        let label = || atoms_label(&atoms);
        let leaf = |what: String, f: LinearForm| -> Out {
            let t = ex.then(|| TraceNode {
                label: what,
                value: f.to_string(),
                children: Vec::new(),
            });
            (f, t)
        };
        if atoms
            .iter()
            .any(|a| matches!(a, Atom::Const(c) if c.is_zero()))
        {
            return Ok(leaf(format!("{}: trivial metric", label()), LinearForm::zero()));
        }
        if let Some(p) = &ctx.fiber {
            if atoms.iter().any(|a| a.is_const()) {
                return Ok(leaf(
                    format!("{} on fiber {p}: constant class", label()),
                    LinearForm::zero(),
                ));
            }
            let refs: Vec<&Atom> = atoms.iter().collect();
            let v = perm(&refs, &free);
            return Ok(leaf(
                format!("{} on fiber {p}: degree {v}", label()),
                LinearForm::exact(LogLinear::log_scaled(p, rat(v))),
            ));
        }
        if let Some(pos) = atoms.iter().position(|a| a.is_const()) {
            let text = label();
            let Atom::Const(c) = atoms.remove(pos) else {
                unreachable!()
            };
            let refs: Vec<&Atom> = atoms.iter().collect();
            let v = perm(&refs, &free);
            return Ok(leaf(
                format!("{text}: constant ({c}) × degree {v}"),
                LinearForm::exact(c.scale(&rat(v))),
            ));
        }
        if let Some(pos) = atoms.iter().position(|a| a.is_section()) {
            let Atom::Section(s) = &atoms[pos] else {
                unreachable!()
            };
            let actual = s.actual_degree();
            if actual != s.degree {
                return self.split_deficit(atoms, pos, actual, ctx, ex);
            }
            if actual.iter().all(|&d| d == 0) {
                let mut n = BigInt::zero();
                for c in &s.coords {
                    let v = c.constant_value().unwrap_or_default();
                    n += &v * &v;
                }
                if n.is_zero() {
                    return Err(Error::BaseLocusHit { factor: 0 });
                }
                let text = label();
                atoms[pos] = Atom::Const(half_log(&n));
                let (f, t) = self.eval_inner(atoms, ctx, ex)?;
                return Ok(wrap(ex, format!("{text}: constant tuple"), f, t.into_iter().collect()));
            }
        }
        self.peel(atoms, ctx, ex)
    }

    /// `S(T, e) = S(T, a) + sum_j (e_j - a_j) [z_j = ∞]`.
    fn split_deficit(
        &self,
        atoms: Vec<Atom>,
        pos: usize,
        actual: Vec<u32>,
        ctx: &Ctx,
        ex: bool,
    ) -> Result<Out> {
        let text = atoms_label(&atoms);
        let Atom::Section(s) = &atoms[pos] else {
            unreachable!()
        };
        let declared = s.degree.clone();
        let mut main = atoms.clone();
        main[pos] = Atom::Section(SectionClass {
            coords: s.coords.clone(),
            degree: actual.clone(),
        });
        let (mut total, t) = self.eval(main, ctx, ex)?;
        let mut children: Vec<TraceNode> = t.into_iter().collect();
        let rest: Vec<Atom> = atoms
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != pos)
            .map(|(_, a)| a.clone())
            .collect();
        for j in 0..ctx.m {
            let k = declared[j] - actual[j];
            if k == 0 {
                continue;
            }
            let mut sub = ctx.clone();
            sub.free[j] = false;
            let (f, t) = self.eval(fix(rest.clone(), j, &BigInt::zero(), &BigInt::one()), &sub, ex)?;
            total.add_scaled(&f, &rat(k.into()));
            children.extend(t.map(|t| TraceNode {
                label: format!("degree deficit {k} at z{} = ∞", j + 1),
                value: f.to_string(),
                children: vec![t],
            }));
        }
        Ok(wrap(ex, format!("{text}: split declared degree"), total, children))
    }

    fn choose(&self, atoms: &[Atom]) -> usize {
        let rank = |j: usize| -> usize {
            self.config
                .peel_order
                .as_ref()
                .and_then(|o| o.iter().position(|&x| x == j))
                .unwrap_or(usize::MAX / 2 + j)
        };
        atoms
            .iter()
            .enumerate()
            .filter_map(|(k, a)| match a {
                Atom::Fs(j) => Some((rank(*j), k)),
                _ => None,
            })
            .min()
            .map(|(_, k)| k)
            .expect("a horizontal problem without constants has a Fubini–Study atom")
    }

    fn peel(&self, mut atoms: Vec<Atom>, ctx: &Ctx, ex: bool) -> Result<Out> {
        let text = atoms_label(&atoms);
        let k = self.choose(&atoms);
        let Atom::Fs(i) = atoms.remove(k) else {
            unreachable!()
        };
        let (restr, rt) = self.restriction(&atoms, ctx, i, ex)?;
        let green = self.green(&atoms, ctx, i)?;
        let mut total = restr.clone();
        total += green.clone();
        let mut children = Vec::new();
        if ex {
            children.push(TraceNode {
                label: format!("restriction to z{} = ∞", i + 1),
                value: restr.to_string(),
                children: rt.into_iter().collect(),
            });
            children.push(TraceNode {
                label: format!("Green term (1/2) log(1 + |z{}|^2)", i + 1),
                value: green.to_string(),
                children: Vec::new(),
            });
        }
        Ok(wrap(ex, format!("{text}: peel FS(z{})", i + 1), total, children))
    }

    fn restriction(&self, rest: &[Atom], ctx: &Ctx, i: usize, ex: bool) -> Result<Out> {
        if rest.iter().any(|a| matches!(a, Atom::Fs(j) if *j == i)) {
            return Ok((LinearForm::zero(), None));
        }
        let mut sub = ctx.clone();
        sub.free[i] = false;
        let fixed = fix(rest.to_vec(), i, &BigInt::zero(), &BigInt::one());
        let Some(pos) = fixed.iter().position(|a| a.is_section()) else {
            return self.eval(fixed, &sub, ex);
        };
        let Atom::Section(s) = &fixed[pos] else {
            unreachable!()
        };
        if s.coords.iter().all(|c| c.is_zero()) {
            return Err(Error::BaseLocusHit { factor: i + 1 });
        }
        let nz = normalize(&s.coords)?;
        let actual = nz.point.multidegree().to_vec();
        let others: Vec<Atom> = fixed
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != pos)
            .map(|(_, a)| a.clone())
            .collect();
        let with = |sec: SectionClass| {
            let mut v = others.clone();
            v.push(Atom::Section(sec));
            v
        };
        let mut children = Vec::new();
        let (mut total, t) = self.eval(
            with(SectionClass {
                coords: nz.point.coords().to_vec(),
                degree: actual.clone(),
            }),
            &sub,
            ex,
        )?;
        children.extend(t);
        let gdeg: Vec<u32> = s.degree.iter().zip(&actual).map(|(d, a)| d - a).collect();
        if !nz.gcd.is_constant() || gdeg.iter().any(|&d| d > 0) {
            let (f, t) = self.eval(
                with(SectionClass {
                    coords: vec![nz.gcd.clone()],
                    degree: gdeg,
                }),
                &sub,
                ex,
            )?;
            total += f.clone();
            children.extend(t.map(|t| TraceNode {
                label: format!("removed gcd {}", nz.gcd),
                value: f.to_string(),
                children: vec![t],
            }));
        }
        if !nz.content.is_one() {
            let fz = factor_integer(&nz.content);
            let mut primes = fz.primes;
            if !fz.cofactor.is_one() {
                primes.push((fz.cofactor, 1));
            }
            for (p, mult) in primes {
                let mut vert = sub.clone();
                vert.fiber = Some(p.clone());
                let (f, t) = self.eval(others.clone(), &vert, ex)?;
                total.add_scaled(&f, &rat(mult.into()));
                children.extend(t.map(|t| TraceNode {
                    label: format!("removed content: {mult} × fiber over {p}"),
                    value: f.to_string(),
                    children: vec![t],
                }));
            }
        }
        Ok(wrap(ex, "normalized leading tuple".into(), total, children))
    }

    /// `∫ (1/2) log(1 + |z_i|^2) ∧ (curvature forms of rest)`.
    fn green(&self, rest: &[Atom], ctx: &Ctx, i: usize) -> Result<LinearForm> {
        let free = ctx.free_factors();
        let Some(pos) = rest.iter().position(|a| a.is_section()) else {
            let refs: Vec<&Atom> = rest.iter().collect();
            let v = perm(&refs, &free);
            return Ok(LinearForm::exact(LogLinear::rational(rat(v) * half())));
        };
        let Atom::Section(s) = &rest[pos] else {
            unreachable!()
        };
        let q: Vec<&Atom> = rest
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != pos)
            .map(|(_, a)| a)
            .collect();
        let peeled = Atom::Fs(i);
        fn with<'a>(first: &'a Atom, q: &[&'a Atom]) -> Vec<&'a Atom> {
            let mut v = vec![first];
            v.extend(q.iter().copied());
            v
        }
        let sec = Atom::Section(s.clone());
        let a = perm(&with(&sec, &q), &free);
        let alpha = perm(&with(&peeled, &q), &free);
        let others: Vec<usize> = free.iter().copied().filter(|&j| j != i).collect();
        let beta = perm(&q, &others);
        let mut out = LinearForm::exact(LogLinear::rational(rat(a) * half()));
        if alpha != 0 {
            let e: u32 = free.iter().map(|&j| s.degree[j]).sum();
            let mut t = mahler(&s.coords)?;
            t.add_exact(&LogLinear::rational(-rat(e.into()) * half()));
            out.add_scaled(&t, &rat(alpha));
        }
        if beta != 0 {
            let lead: Vec<MultiPoly> = s
                .coords
                .iter()
                .map(|c| c.specialize_homogeneous(i, s.degree[i], &BigInt::zero(), &BigInt::one()))
                .collect();
            if lead.iter().all(|c| c.is_zero()) {
                return Err(Error::BaseLocusHit { factor: i + 1 });
            }
            let e: u32 = others.iter().map(|&j| s.degree[j]).sum();
            let mut t = mahler(&lead)?;
            t.add_exact(&LogLinear::rational(-rat(e.into()) * half()));
            out.add_scaled(&t, &-rat(beta));
        }
        Ok(out)
    }
}

fn wrap(ex: bool, label: String, f: LinearForm, children: Vec<TraceNode>) -> Out {
    let t = ex.then(|| TraceNode {
        label,
        value: f.to_string(),
        children,
    });
    (f, t)
}

/// Multilinear expansion of the classes into weighted atom lists, grouped
/// by canonical form.
fn expand(prob: &IntersectionProblem) -> Vec<(BigRational, Vec<Atom>)> {
    let mut acc: Vec<(BigRational, Vec<Atom>)> = vec![(BigRational::one(), Vec::new())];
    for class in &prob.classes {
        let mut opts: Vec<(BigRational, Atom)> = class
            .fs_part
            .iter()
            .enumerate()
            .filter(|(_, q)| !q.is_zero())
            .map(|(i, q)| (q.clone(), Atom::Fs(i)))
            .collect();
        if !class.const_part.is_zero() {
            opts.push((BigRational::one(), Atom::Const(class.const_part.clone())));
        }
        if let Some(s) = &class.section_part {
            opts.push((BigRational::one(), Atom::Section(s.clone())));
        }
        let mut next = Vec::with_capacity(acc.len() * opts.len());
        for (q, atoms) in &acc {
            let has_const = atoms.iter().any(|a| a.is_const());
            for (w, a) in &opts {
                // two constant classes always give zero
                if has_const && a.is_const() {
                    continue;
                }
                let mut v = atoms.clone();
                v.push(a.clone());
                next.push((q * w, v));
            }
        }
        acc = next;
    }
    let mut grouped: BTreeMap<String, (BigRational, Vec<Atom>)> = BTreeMap::new();
    for (q, mut atoms) in acc {
        atoms.sort_by_key(|a| a.sort_key());
        let key = atoms_label(&atoms);
        let e = grouped
            .entry(key)
            .or_insert_with(|| (BigRational::zero(), atoms));
        e.0 += q;
    }
    grouped
        .into_values()
        .filter(|(q, _)| !q.is_zero())
        .collect()
}
