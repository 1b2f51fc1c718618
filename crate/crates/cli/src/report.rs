//! Serializable reports and their CSV and plain-text renderings.

use std::fmt::Write as _;

use arakheight::arakelov::TraceNode;
use arakheight::RigorousValue;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Value {
    pub value: f64,
    pub error_bound: f64,
    /// Exact closed form when the value has one.
    pub symbolic: Option<String>,
}

impl From<&RigorousValue> for Value {
    fn from(v: &RigorousValue) -> Self {
        Value {
            value: v.numeric,
            error_bound: v.error_bound,
            symbolic: v.symbolic.as_ref().map(|s| s.to_string()),
        }
    }
}

impl std::fmt::Display for Value {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.symbolic {
            Some(s) => write!(f, "{s} = {:.12}", self.value),
            None => write!(f, "{:.12} ± {:.3e}", self.value, self.error_bound),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HeightReport {
    pub command: String,
    pub point: String,
    pub polarization: String,
    pub n: usize,
    pub d: usize,
    pub multidegree: Vec<u32>,
    #[serde(flatten)]
    pub height: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<TraceNode>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IdentityRow {
    pub point: String,
    pub lhs: Value,
    pub rhs: Value,
    /// Difference of the exact forms, evaluated once.
    pub residual: Value,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FitRow {
    pub point: String,
    pub height_a: f64,
    pub height_b: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum CompareReport {
    Identity {
        command: String,
        d: usize,
        rows: Vec<IdentityRow>,
    },
    Fit {
        command: String,
        polarization_a: String,
        polarization_b: String,
        a: f64,
        b: f64,
        c1: f64,
        c2: f64,
        /// Tolerance each height was evaluated to.
        error_bound: f64,
        rows: Vec<FitRow>,
        note: String,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SlotReport {
    pub slot: usize,
    pub factor: usize,
    pub exponent: String,
    pub witness_exponents: Vec<(u32, u32)>,
    pub witness_sup_norm: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CertifyReport {
    pub command: String,
    pub polarization: String,
    pub d: usize,
    pub certified: bool,
    /// Product of the slot exponents: `h_FS <= scale · h^B`.
    pub scale: String,
    pub slots: Vec<SlotReport>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PointRecord {
    pub point: String,
    pub height: f64,
    pub error_bound: f64,
    pub status: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EnumerateReport {
    pub command: String,
    pub n: usize,
    pub d: usize,
    pub bound: f64,
    pub polarization: String,
    pub degree_bounds: Vec<i64>,
    pub coeff_bound: u64,
    pub evaluated: u64,
    pub count: usize,
    pub undecided: usize,
    pub points: Vec<PointRecord>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChowReport {
    pub command: String,
    pub cycle: String,
    pub n: usize,
    pub d: usize,
    pub degree: u32,
    pub polarization: String,
    pub chow_form: String,
    pub chow_coordinates: Vec<String>,
    pub cycle_height: Value,
    pub chow_height: Value,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SupnormReport {
    pub command: String,
    pub section: String,
    pub degrees: Vec<u32>,
    pub variant: String,
    pub coeff_max: f64,
    pub mean: f64,
    pub mean_error: f64,
    pub constant: f64,
    pub sup_norm: f64,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CounterexampleRecord {
    pub n: u32,
    /// Exact rational height.
    pub height: String,
    pub value: f64,
    pub error_bound: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CounterexampleReport {
    pub command: String,
    pub curve: String,
    pub c: String,
    pub verdict: String,
    pub rows: Vec<CounterexampleRecord>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CacheReport {
    pub command: String,
    pub action: String,
    pub dir: Option<String>,
    pub entries: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub removed: Option<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ErrorBody {
    pub kind: String,
    pub message: String,
    pub exit_code: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hint: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ErrorReport {
    pub error: ErrorBody,
}

#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum Report {
    Height(HeightReport),
    Compare(CompareReport),
    Certify(CertifyReport),
    Enumerate(EnumerateReport),
    Chow(ChowReport),
    Supnorm(SupnormReport),
    Counterexample(CounterexampleReport),
    Cache(CacheReport),
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

impl Report {
    pub fn name(&self) -> &'static str {
        match self {
            Report::Height(_) => "height",
            Report::Compare(_) => "compare",
            Report::Certify(_) => "certify",
            Report::Enumerate(_) => "enumerate",
            Report::Chow(_) => "chow",
            Report::Supnorm(_) => "supnorm",
            Report::Counterexample(_) => "counterexample",
            Report::Cache(_) => "cache",
        }
    }

    pub fn json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// `None` for reports without a natural table.
    pub fn csv(&self) -> Option<String> {
        let mut out = String::new();
        match self {
            Report::Enumerate(r) => {
                out.push_str("point,height,error_bound,status\n");
                for p in &r.points {
                    let _ = writeln!(out, "{},{},{},{}", csv_field(&p.point), p.height, p.error_bound, p.status);
                }
            }
            Report::Counterexample(r) => {
                out.push_str("n,height,value,error_bound\n");
                for row in &r.rows {
                    let _ = writeln!(out, "{},{},{},{}", row.n, row.height, row.value, row.error_bound);
                }
            }
            Report::Compare(CompareReport::Identity { rows, .. }) => {
                out.push_str("point,lhs,lhs_error,rhs,rhs_error,residual,residual_error\n");
                for r in rows {
                    let _ = writeln!(
                        out,
                        "{},{},{},{},{},{},{}",
                        csv_field(&r.point),
                        r.lhs.value,
                        r.lhs.error_bound,
                        r.rhs.value,
                        r.rhs.error_bound,
                        r.residual.value,
                        r.residual.error_bound
                    );
                }
            }
            Report::Compare(CompareReport::Fit { rows, .. }) => {
                out.push_str("point,height_a,height_b\n");
                for r in rows {
                    let _ = writeln!(out, "{},{},{}", csv_field(&r.point), r.height_a, r.height_b);
                }
            }
            _ => return None,
        }
        Some(out)
    }

    pub fn pretty(&self) -> String {
        let mut out = String::new();
        match self {
            Report::Height(r) => {
                let _ = writeln!(out, "h^{}({}) = {}", r.polarization, r.point, r.height);
                if let Some(t) = &r.trace {
                    render_trace(&mut out, t, 0);
                }
            }
            Report::Compare(CompareReport::Identity { d, rows, .. }) => {
                let _ = writeln!(out, "h^B0 vs d! h^B1 + (d!/2) Σ h^Bij at d = {d}");
                for r in rows {
                    let _ = writeln!(out, "{}\n  lhs {}\n  rhs {}\n  lhs - rhs {}", r.point, r.lhs, r.rhs, r.residual);
                }
            }
            Report::Compare(CompareReport::Fit { polarization_a, polarization_b, a, b, c1, c2, note, .. }) => {
                let _ = writeln!(
                    out,
                    "{a:.6} h^{polarization_b} - {c1:.6} <= h^{polarization_a} <= {b:.6} h^{polarization_b} + {c2:.6}\n{note}"
                );
            }
            Report::Certify(r) => {
                let _ = writeln!(out, "{} is fairly large on d = {} (scale {})", r.polarization, r.d, r.scale);
                for s in &r.slots {
                    let _ = writeln!(
                        out,
                        "  slot {} -> factor {}: exponent {}, witness {:?} with sup norm {:.6}",
                        s.slot, s.factor, s.exponent, s.witness_exponents, s.witness_sup_norm
                    );
                }
            }
            Report::Enumerate(r) => {
                let _ = writeln!(
                    out,
                    "{} points of P^{} over Q(z1..z{}) with h^{} <= {} ({} undecided, box D = {:?}, H = {})",
                    r.count, r.n, r.d, r.polarization, r.bound, r.undecided, r.degree_bounds, r.coeff_bound
                );
                for p in &r.points {
                    let _ = writeln!(out, "  {:<32} {:.12} ± {:.1e} {}", p.point, p.height, p.error_bound, p.status);
                }
            }
            Report::Chow(r) => {
                let _ = writeln!(out, "cycle {} of degree {}", r.cycle, r.degree);
                let _ = writeln!(out, "Chow form {}", r.chow_form);
                let _ = writeln!(out, "h^{}(Z) = {}", r.polarization, r.cycle_height);
                let _ = writeln!(out, "h(Chow form) = {}", r.chow_height);
            }
            Report::Supnorm(r) => {
                let _ = writeln!(
                    out,
                    "|s| = {} vs C·mean = {:.6} · {:.6} ({}): {}\nsup‖s‖_FS = {:.12}",
                    r.coeff_max,
                    r.constant,
                    r.mean,
                    r.variant,
                    if r.holds { "holds" } else { "VIOLATED" },
                    r.sup_norm
                );
            }
            Report::Counterexample(r) => {
                let _ = writeln!(out, "{}\nc = {}", r.curve, r.c);
                let _ = writeln!(out, "{:>4}  h(x_n)", "n");
                for row in &r.rows {
                    let _ = writeln!(out, "{:>4}  {}", row.n, row.height);
                }
                let _ = writeln!(out, "verdict: {}", r.verdict);
            }
            Report::Cache(r) => {
                let dir = r.dir.as_deref().unwrap_or("(memory only)");
                let _ = writeln!(out, "{dir}: {} entries", r.entries);
                if let Some(n) = r.removed {
                    let _ = writeln!(out, "removed {n}");
                }
            }
        }
        out
    }
}

fn render_trace(out: &mut String, t: &TraceNode, depth: usize) {
    let _ = writeln!(out, "{}{} = {}", "  ".repeat(depth + 1), t.label, t.value);
    for c in &t.children {
        render_trace(out, c, depth + 1);
    }
}
