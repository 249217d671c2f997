//! Command-line front end. Exit codes: 0 pass, 1 check failure, 2 resource
//! limit exceeded, 64 usage error.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};

use crate::centralizer::{
    commutant_basis, default_q_values, half_commutant_basis, symbolic_commutant_basis, SpecializedCommutants,
};
use crate::coeff::{format_rational, parse_rational, LaurentPoly, Rational};
use crate::error::Error;
use crate::glq::tq_dimension;
use crate::hecke::{poincare_polynomial, x_lambda, y_lambda, HeckeElement};
use crate::qperm::{half_qpartition_dim, phi_d, qpartition_dim};
use crate::symcomb::{all_permutations, bell, double_coset_reps, stirling2, Composition};
use crate::tensor::{
    act, act_gen, check_classical_limit, check_invertibility, orbit_iso, orbits, tensor_dim, verify_relations,
    MultiIndex, TensorAction, TensorVector,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_LIMIT: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

/// Default guard on `n^r` for matrix-building commands.
pub const DEFAULT_LIMIT: u128 = 4096;

#[derive(Parser, Debug)]
#[command(name = "qhecke", version, about = "Hecke algebra actions on tensor space and q-partition algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: Global,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Rank: H_q(S_n) acting on an n-dimensional space
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Tensor power
    #[arg(long, global = true)]
    pub r: Option<usize>,
    /// Specialization points, e.g. 7/5,3
    #[arg(long, global = true, value_delimiter = ',')]
    pub q: Vec<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Largest n^r accepted by matrix-building commands
    #[arg(long, global = true, default_value_t = DEFAULT_LIMIT)]
    pub limit: u128,
    /// Write output here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<std::path::PathBuf>,
    /// Seed for randomized checks
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the action: relations, q = 1 limit, invertibility, orbit isomorphisms
    Verify,
    /// Dimension table of q-partition algebras
    Dims {
        /// Half-integer variant
        #[arg(long)]
        half: bool,
    },
    /// Apply one generator to a basis tensor
    Act {
        /// Generator index i, acting as T_i with 1 <= i < n
        #[arg(long = "gen")]
        generator: usize,
        /// Multi-index such as 1,2,1
        #[arg(long)]
        index: String,
    },
    /// Compute the commutant of the action
    Commutant {
        /// Solve over Q(q) instead of at rational points
        #[arg(long)]
        symbolic: bool,
        /// Only T_1..T_{n-2} act (the half-integer algebra)
        #[arg(long)]
        half: bool,
        /// Include basis matrices in JSON output
        #[arg(long)]
        basis: bool,
    },
    /// Dimension polynomial on the general linear group side
    GlqDims {
        /// Evaluate at this q
        #[arg(long)]
        at: Option<String>,
    },
    /// Export generator matrices (or hook Hom bases with --hom) as JSON
    Export {
        /// Export Hom bases between hook permutation modules
        #[arg(long)]
        hom: bool,
    },
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::DimensionLimitExceeded { .. } => EXIT_LIMIT,
            Error::Parse(_)
            | Error::InvalidMultiIndex(_)
            | Error::InvalidComposition(_)
            | Error::InvalidPartition(_)
            | Error::InvalidPermutation(_)
            | Error::GeneratorOutOfRange { .. }
            | Error::ZeroSpecialization => EXIT_USAGE,
            _ => EXIT_FAIL,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: msg.into(),
    }
}

/// Rendered output and exit code of one command.
struct Outcome {
    text: String,
    code: i32,
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    EXIT_PASS
                }
                _ => {
                    let _ = write!(stderr, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(&cli) {
        Ok(outcome) => {
            let written = match &cli.global.out {
                Some(path) => std::fs::write(path, &outcome.text).map_err(|e| e.to_string()),
                None => stdout.write_all(outcome.text.as_bytes()).map_err(|e| e.to_string()),
            };
            match written {
                Ok(()) => outcome.code,
                Err(e) => {
                    let _ = writeln!(stderr, "error: {e}");
                    EXIT_FAIL
                }
            }
        }
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn need(v: Option<usize>, name: &str) -> Result<usize, Failure> {
    match v {
        Some(x) if x >= 1 => Ok(x),
        Some(_) => Err(usage(format!("--{name} must be at least 1"))),
        None => Err(usage(format!("--{name} is required"))),
    }
}

fn q_values(g: &Global) -> Result<Vec<Rational>, Failure> {
    if g.q.is_empty() {
        return Ok(default_q_values());
    }
    let qs = g.q.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>, _>>()?;
    if qs.iter().any(|q| num_traits::Zero::is_zero(q)) {
        return Err(Error::ZeroSpecialization.into());
    }
    Ok(qs)
}

fn dispatch(cli: &Cli) -> Result<Outcome, Failure> {
    let g = &cli.global;
    match &cli.command {
        Command::Verify => cmd_verify(g),
        Command::Dims { half } => cmd_dims(g, *half),
        Command::Act { generator, index } => cmd_act(g, *generator, index),
        Command::Commutant { symbolic, half, basis } => cmd_commutant(g, *symbolic, *half, *basis),
        Command::GlqDims { at } => cmd_glq(g, at.as_deref()),
        Command::Export { hom } => cmd_export(g, *hom),
    }
}

struct Check {
    name: String,
    pass: bool,
    detail: String,
}

fn render_checks(format: Format, checks: &[Check]) -> String {
    let all = checks.iter().all(|c| c.pass);
    match format {
        Format::Json => {
            let v: Vec<Value> = checks
                .iter()
                .map(|c| json!({"name": c.name, "pass": c.pass, "detail": c.detail}))
                .collect();
            format!("{}\n", json!({"pass": all, "checks": v}))
        }
        Format::Csv => {
            let mut s = String::from("check,pass,detail\n");
            for c in checks {
                s += &format!("{},{},\"{}\"\n", c.name, c.pass, c.detail.replace('"', "'"));
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for c in checks {
                let tag = if c.pass { "PASS" } else { "FAIL" };
                if c.detail.is_empty() {
                    s += &format!("{tag} {}\n", c.name);
                } else {
                    s += &format!("{tag} {}: {}\n", c.name, c.detail);
                }
            }
            s
        }
    }
}

fn cmd_verify(g: &Global) -> Result<Outcome, Failure> {
    let n = need(g.n, "n")?;
    let r = need(g.r, "r")?;
    let action = TensorAction::new(n, r, g.limit)?;
    let mut checks = Vec::new();

    let rep = verify_relations(&action);
    checks.push(Check {
        name: "relations".into(),
        pass: rep.pass,
        detail: rep
            .counterexample
            .unwrap_or_else(|| format!("{} identities on {} basis tensors", rep.relations_checked, action.dim())),
    });
    checks.push(Check {
        name: "classical-limit".into(),
        pass: check_classical_limit(&action),
        detail: String::new(),
    });
    checks.push(Check {
        name: "invertibility".into(),
        pass: check_invertibility(&action),
        detail: String::new(),
    });

    let os = orbits(n, r);
    let census: u128 = os.iter().map(|(_, s)| s).sum();
    let expected: u128 = (1..=n.min(r)).map(|k| stirling2(r, k)).sum();
    checks.push(Check {
        name: "orbit-census".into(),
        pass: os.len() as u128 == expected && Some(census) == (n as u128).checked_pow(r as u32),
        detail: format!("{} orbits", os.len()),
    });
    let mut bad = Vec::new();
    for (p, _) in &os {
        let iso = orbit_iso(n, r, p)?;
        if !iso.equivariant {
            bad.push(format!("{:?}", p.blocks()));
        }
    }
    checks.push(Check {
        name: "orbit-isomorphisms".into(),
        pass: bad.is_empty(),
        detail: if bad.is_empty() { String::new() } else { format!("not equivariant: {}", bad.join(" ")) },
    });

    let mut hecke_ok = true;
    for k in 0..=n {
        let lam = Composition::hook(n, k)?;
        let x = x_lambda(&lam);
        let y = y_lambda(&lam);
        hecke_ok &= x.mul(&x)? == x.scale(&poincare_polynomial(&lam));
        for i in 1..n {
            if lam.block_of(i) == lam.block_of(i + 1) {
                hecke_ok &= x.mul_gen_left(i)? == x.scale(&LaurentPoly::q());
                hecke_ok &= y.mul_gen_left(i)? == y.scale(&LaurentPoly::from_int(-1));
            }
        }
    }
    checks.push(Check {
        name: "symmetrizers".into(),
        pass: hecke_ok,
        detail: String::new(),
    });

    // T_a (T_b v) = (T_a T_b) v for random pairs
    let mut rng = StdRng::seed_from_u64(g.seed);
    let perms = all_permutations(n);
    let mut compat = true;
    for _ in 0..16 {
        let a = &perms[rng.random_range(0..perms.len())];
        let b = &perms[rng.random_range(0..perms.len())];
        let j = MultiIndex::from_rank(n, r, rng.random_range(0..action.dim()));
        let v = TensorVector::basis(n, j)?;
        let (ta, tb) = (HeckeElement::t_w(a), HeckeElement::t_w(b));
        compat &= act(&ta, &act(&tb, &v)?)? == act(&ta.mul(&tb)?, &v)?;
    }
    checks.push(Check {
        name: "module-compatibility".into(),
        pass: compat,
        detail: format!("seed {}", g.seed),
    });

    let code = if checks.iter().all(|c| c.pass) { EXIT_PASS } else { EXIT_FAIL };
    Ok(Outcome {
        text: render_checks(g.format, &checks),
        code,
    })
}

fn cmd_dims(g: &Global, half: bool) -> Result<Outcome, Failure> {
    let ns: Vec<usize> = match g.n {
        Some(n) => vec![need(Some(n), "n")?],
        None => (1..=6).collect(),
    };
    let rs: Vec<usize> = match g.r {
        Some(r) => vec![need(Some(r), "r")?],
        None => (1..=4).collect(),
    };
    let mut rows = Vec::new();
    for &n in &ns {
        for &r in &rs {
            let (dim, bell_value) = if half {
                (half_qpartition_dim(n, r), (n > 2 * r).then(|| bell(2 * r + 1)))
            } else {
                (qpartition_dim(n, r), (n >= 2 * r).then(|| bell(2 * r)))
            };
            rows.push((n, r, dim, bell_value));
        }
    }
    let all_match = rows.iter().all(|(_, _, d, b)| b.is_none_or(|b| b == *d));
    let text = match g.format {
        Format::Json => {
            let v: Vec<Value> = rows
                .iter()
                .map(|(n, r, d, b)| json!({"n": n, "r": r, "dim": d.to_string(), "bell": b.map(|b| b.to_string()), "match": b.map(|b| b == *d)}))
                .collect();
            format!("{}\n", json!({"half": half, "rows": v}))
        }
        Format::Csv => {
            let mut s = String::from("n,r,dim,bell,match\n");
            for (n, r, d, b) in &rows {
                let (bs, ms) = b.map_or((String::new(), String::new()), |b| (b.to_string(), (b == *d).to_string()));
                s += &format!("{n},{r},{d},{bs},{ms}\n");
            }
            s
        }
        Format::Text => {
            let label = if half { "half-dim" } else { "dim" };
            let mut s = format!("{:>3} {:>3} {:>12} {:>12}  match\n", "n", "r", label, "bell");
            for (n, r, d, b) in &rows {
                let (bs, ms) = b.map_or(("-".to_string(), "-"), |b| (b.to_string(), if b == *d { "match" } else { "MISMATCH" }));
                s += &format!("{n:>3} {r:>3} {d:>12} {bs:>12}  {ms}\n");
            }
            s
        }
    };
    Ok(Outcome {
        text,
        code: if all_match { EXIT_PASS } else { EXIT_FAIL },
    })
}

fn cmd_act(g: &Global, generator: usize, index: &str) -> Result<Outcome, Failure> {
    let n = need(g.n, "n")?;
    let j = MultiIndex::parse(n, index)?;
    if let Some(r) = g.r {
        if r != j.r() {
            return Err(usage(format!("--index has length {} but --r is {r}", j.r())));
        }
    }
    let v = act_gen(generator, &TensorVector::basis(n, j.clone())?)?;
    let text = match g.format {
        Format::Json => format!("{}\n", json!({"n": n, "r": j.r(), "generator": generator, "index": j, "result": v})),
        Format::Csv => {
            let mut s = String::from("index,coeff\n");
            for (k, c) in v.terms() {
                let e: Vec<String> = k.entries().iter().map(|x| x.to_string()).collect();
                s += &format!("\"{}\",\"{c}\"\n", e.join(","));
            }
            s
        }
        Format::Text => format!("{v}\n"),
    };
    Ok(Outcome { text, code: EXIT_PASS })
}

fn commutant_json(c: &SpecializedCommutants, expected: u128, include_basis: bool) -> Value {
    let mut v = json!({
        "n": c.n,
        "r": c.r,
        "half": c.half,
        "dim": c.dim(),
        "q_values": c.per_q.iter().map(|(q, _)| format_rational(q)).collect::<Vec<_>>(),
        "dims": c.dims(),
        "agree": c.agree(),
        "expected": expected.to_string(),
    });
    if include_basis {
        let (_, first) = &c.per_q[0];
        let basis: Vec<Value> = first
            .space
            .basis
            .iter()
            .map(|b| {
                Value::Array(
                    b.iter()
                        .map(|(k, x)| json!([k / first.dim, k % first.dim, format_rational(x)]))
                        .collect(),
                )
            })
            .collect();
        v["basis"] = json!({"q": format_rational(&c.per_q[0].0), "format": "[row, col, value] triplets", "elements": basis});
    }
    v
}

fn cmd_commutant(g: &Global, symbolic: bool, half: bool, include_basis: bool) -> Result<Outcome, Failure> {
    let n = need(g.n, "n")?;
    let r = need(g.r, "r")?;
    let expected = if half { half_qpartition_dim(n, r) } else { qpartition_dim(n, r) };
    if symbolic {
        let c = symbolic_commutant_basis(n, r, half, g.limit)?;
        let ok = c.rank() as u128 == expected;
        let text = match g.format {
            Format::Json => {
                let mut v = json!({"n": n, "r": r, "half": half, "dim": c.rank(), "q_values": ["q"], "agree": true, "expected": expected.to_string()});
                if include_basis {
                    let basis: Vec<Value> = c
                        .space
                        .basis
                        .iter()
                        .map(|b| Value::Array(b.iter().map(|(k, x)| json!([k / c.dim, k % c.dim, x.to_string()])).collect()))
                        .collect();
                    v["basis"] = json!({"q": "q", "format": "[row, col, value] triplets", "elements": basis});
                }
                format!("{v}\n")
            }
            Format::Csv => format!("n,r,half,q,dim,expected\n{n},{r},{half},q,{},{expected}\n", c.rank()),
            Format::Text => format!("symbolic commutant dimension {} (formula {expected})\n", c.rank()),
        };
        return Ok(Outcome {
            text,
            code: if ok { EXIT_PASS } else { EXIT_FAIL },
        });
    }
    let qs = q_values(g)?;
    let c = if half {
        half_commutant_basis(n, r, &qs, g.limit)?
    } else {
        commutant_basis(n, r, &qs, g.limit)?
    };
    let ok = c.agree() && c.dim().map(|d| d as u128) == Some(expected);
    let text = match g.format {
        Format::Json => format!("{}\n", commutant_json(&c, expected, include_basis)),
        Format::Csv => {
            let mut s = String::from("n,r,half,q,dim,expected\n");
            for (q, d) in c.per_q.iter().map(|(q, c)| (q, c.rank())) {
                s += &format!("{n},{r},{half},{},{d},{expected}\n", format_rational(q));
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for (q, cm) in &c.per_q {
                s += &format!("q = {:<6} dimension {}\n", format_rational(q), cm.rank());
            }
            s += &format!(
                "agree: {}, formula: {expected}, {}\n",
                c.agree(),
                if ok { "match" } else { "MISMATCH" }
            );
            s
        }
    };
    Ok(Outcome {
        text,
        code: if ok { EXIT_PASS } else { EXIT_FAIL },
    })
}

fn cmd_glq(g: &Global, at: Option<&str>) -> Result<Outcome, Failure> {
    let n = need(g.n, "n")?;
    let r = need(g.r, "r")?;
    let p = tq_dimension(n, r);
    let value = at.map(parse_rational).transpose()?.map(|q| p.eval(&q)).transpose()?;
    let text = match g.format {
        Format::Json => format!(
            "{}\n",
            json!({"n": n, "r": r, "polynomial": p.to_string(), "coefficients": p, "at": at, "value": value.as_ref().map(format_rational)})
        ),
        Format::Csv => format!(
            "n,r,polynomial,at,value\n{n},{r},\"{p}\",{},{}\n",
            at.unwrap_or(""),
            value.as_ref().map(format_rational).unwrap_or_default()
        ),
        Format::Text => match &value {
            Some(v) => format!("{p}\nat q = {}: {}\n", at.unwrap_or(""), format_rational(v)),
            None => format!("{p}\n"),
        },
    };
    Ok(Outcome { text, code: EXIT_PASS })
}

fn cmd_export(g: &Global, hom: bool) -> Result<Outcome, Failure> {
    let n = need(g.n, "n")?;
    if g.format != Format::Json && g.format != Format::Text {
        return Err(usage("export only writes JSON"));
    }
    let v = if hom {
        let mut maps = Vec::new();
        for k in 0..=n {
            for l in 0..=n {
                let (mu, lam) = (Composition::hook(n, k)?, Composition::hook(n, l)?);
                for d in double_coset_reps(&mu, &lam)? {
                    maps.push(json!({"d": d, "phi": phi_d(&mu, &lam, &d)?}));
                }
            }
        }
        json!({"n": n, "hom_bases": maps})
    } else {
        let r = need(g.r, "r")?;
        tensor_dim(n, r, g.limit)?;
        let action = TensorAction::new(n, r, g.limit)?;
        let gens = (1..n).map(|i| action.matrix_json(i)).collect::<Result<Vec<_>, _>>()?;
        json!({"n": n, "r": r, "generators": gens})
    };
    Ok(Outcome {
        text: format!("{v}\n"),
        code: EXIT_PASS,
    })
}
