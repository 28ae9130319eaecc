//! Command-line surface for the colored multiset Eulerian toolkit.
//!
//! Every subcommand prints one JSON document with `--json` or a pretty
//! rendering of the same data by default. Exit codes: 0 success, 1 a
//! mathematically meaningful mismatch, 2 usage error, 3 capacity error.
//! The environment variable `EULERIAN_CAP` overrides the enumeration cap.

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use cme_core::analysis::{
    gamma_expansion, real_root_certificate, self_interlacing_suite, shape_checks,
    symmetric_decomposition,
};
use cme_core::combinatorics::MultisetSpec;
use cme_core::eulerian::{
    brute_lattice_count, degree_and_codegree, ehrhart_product, eulerian_by_enumeration,
    eulerian_by_transform, symmetry_criterion,
};
use cme_core::identity::{verify_identity, IdentityKind, VerifyCaps};
use cme_core::jsonio;
use cme_core::poly::IntPoly;
use cme_core::s_eulerian::{
    hat_sequence, not_s_eulerian_search, s_eulerian_poly, verify_s_equalities, SSequence,
};
use cme_core::trees::{
    enumerate_trees, eulerian_narayana, partition_gh, tree_gamma, tree_statistics, TreeMode,
};
use cme_core::{CmeError, Limits};

#[derive(Parser)]
#[command(
    name = "cme",
    about = "Exact colored multiset Eulerian polynomials: construction, identity verification, and distributional certificates"
)]
struct Cli {
    /// Emit the result as one JSON document.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct the Eulerian polynomial with degree, codegree, and symmetry.
    Eulerian {
        /// Multiplicities, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        m: Vec<u32>,
        /// Color counts, comma separated (defaults to all ones).
        #[arg(long, value_delimiter = ',')]
        r: Option<Vec<u32>>,
        /// enumeration | transform | both
        #[arg(long, default_value = "both")]
        method: String,
    },
    /// Verify one generating-function identity at finite truncation.
    Verify {
        /// classic | lin_a | lin_b | macmahon_mv | fdmaj | ascent_mv |
        /// equidistribution | second_mv | second_q | flag
        #[arg(long)]
        kind: String,
        #[arg(long, value_delimiter = ',', required = true)]
        m: Vec<u32>,
        /// Defaults to the kind's canonical color vector.
        #[arg(long, value_delimiter = ',')]
        r: Option<Vec<u32>>,
        /// Truncation degree of the designated variable.
        #[arg(long, default_value_t = 4)]
        t_cap: u32,
        /// Per-variable degree cap for the remaining variables.
        #[arg(long, default_value_t = 24)]
        var_cap: u32,
    },
    /// Symmetric decomposition p = a + x*b with respect to n.
    Decompose {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        poly: Vec<i64>,
        #[arg(long)]
        n: usize,
    },
    /// Gamma-basis coordinates of a palindromic polynomial.
    Gamma {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        poly: Vec<i64>,
        #[arg(long)]
        n: usize,
    },
    /// Root certificates, interlacing queries, the five-condition suite, and
    /// coefficient shape checks.
    Certify {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        poly: Vec<i64>,
        /// real-rooted | interlacing | bl-suite | shape
        #[arg(long)]
        check: String,
        /// Reference degree (defaults to the polynomial degree).
        #[arg(long)]
        n: Option<usize>,
        /// The interlacing polynomial q for --check interlacing.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        other: Option<Vec<i64>>,
        /// Demand strict interlacing.
        #[arg(long)]
        strict: bool,
    },
    /// s-Eulerian polynomials, the hat sequence, the lecture-hall
    /// equalities, and the factorization search.
    Seulerian {
        /// Evaluate E^s for this bounding sequence.
        #[arg(long, value_delimiter = ',')]
        s: Option<Vec<u32>>,
        /// n,r: emit the r-scaled hat sequence of length n.
        #[arg(long, value_delimiter = ',')]
        hat: Option<Vec<u32>>,
        /// n,r: check the three lecture-hall equalities.
        #[arg(long, value_delimiter = ',')]
        equalities: Option<Vec<u32>>,
        /// Search every candidate sequence for this target polynomial.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        search_target: Option<Vec<i64>>,
    },
    /// Tree enumeration, statistics, Narayana polynomials, gamma counts, and
    /// the G/H partition.
    Trees {
        /// Label multiset, comma separated.
        #[arg(long, value_delimiter = ',')]
        multiset: Option<Vec<u32>>,
        /// weakly-increasing | multiset
        #[arg(long, default_value = "weakly-increasing")]
        mode: String,
        /// List the trees with their statistics.
        #[arg(long)]
        stats: bool,
        /// Internal-node distribution over weakly increasing trees.
        #[arg(long)]
        narayana: bool,
        /// Leaf histogram of the no-young-leaf trees.
        #[arg(long)]
        gamma: bool,
        /// n,k: split the multiset trees on {1^k,...,(n-1)^k,n}.
        #[arg(long, value_delimiter = ',')]
        partition: Option<Vec<u32>>,
    },
    /// Brute-force lattice point counts of the simplex product.
    Lattice {
        #[arg(long, value_delimiter = ',', required = true)]
        m: Vec<u32>,
        #[arg(long, value_delimiter = ',')]
        r: Option<Vec<u32>>,
        #[arg(long)]
        t: u64,
        /// Count interior points (strict inequalities).
        #[arg(long)]
        interior: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let limits = match std::env::var("EULERIAN_CAP") {
        Ok(v) => match v.parse::<u128>() {
            Ok(cap) => Limits::with_enumeration_cap(cap),
            Err(_) => {
                eprintln!("error: EULERIAN_CAP must be an integer");
                return ExitCode::from(2);
            }
        },
        Err(_) => Limits::default(),
    };
    match run(cli.command, &limits) {
        Ok((payload, code)) => {
            if cli.json {
                println!("{payload}");
            } else {
                print!("{}", pretty(&payload, 0));
            }
            ExitCode::from(code)
        }
        Err(err) => {
            eprintln!("error: {err}");
            let code = match err {
                CmeError::CapacityExceeded { .. } => 3,
                _ => 2,
            };
            ExitCode::from(code)
        }
    }
}

fn run(command: Command, limits: &Limits) -> Result<(Value, u8), CmeError> {
    match command {
        Command::Eulerian { m, r, method } => eulerian_cmd(m, r, &method, limits),
        Command::Verify {
            kind,
            m,
            r,
            t_cap,
            var_cap,
        } => verify_cmd(&kind, m, r, VerifyCaps { t_cap, var_cap }, limits),
        Command::Decompose { poly, n } => {
            let p = IntPoly::from_i64s(&poly);
            let d = symmetric_decomposition(&p, n)?;
            Ok((jsonio::decomposition_json(&d), 0))
        }
        Command::Gamma { poly, n } => {
            let p = IntPoly::from_i64s(&poly);
            let g = gamma_expansion(&p, n)?;
            Ok((jsonio::gamma_json(&g), 0))
        }
        Command::Certify {
            poly,
            check,
            n,
            other,
            strict,
        } => certify_cmd(poly, &check, n, other, strict),
        Command::Seulerian {
            s,
            hat,
            equalities,
            search_target,
        } => seulerian_cmd(s, hat, equalities, search_target, limits),
        Command::Trees {
            multiset,
            mode,
            stats,
            narayana,
            gamma,
            partition,
        } => trees_cmd(multiset, &mode, stats, narayana, gamma, partition, limits),
        Command::Lattice { m, r, t, interior } => {
            let spec = make_spec(m, r)?;
            let count = brute_lattice_count(&spec, t, interior, limits)?;
            let ehrhart = ehrhart_product(&spec);
            Ok((
                json!({
                    "spec": jsonio::spec_json(&spec),
                    "t": t,
                    "interior": interior,
                    "count": count.to_string(),
                    "ehrhart": jsonio::rat_poly_json(&ehrhart, "t"),
                }),
                0,
            ))
        }
    }
}

fn make_spec(m: Vec<u32>, r: Option<Vec<u32>>) -> Result<MultisetSpec, CmeError> {
    let r = r.unwrap_or_else(|| vec![1; m.len()]);
    MultisetSpec::new(m, r)
}

fn eulerian_cmd(
    m: Vec<u32>,
    r: Option<Vec<u32>>,
    method: &str,
    limits: &Limits,
) -> Result<(Value, u8), CmeError> {
    let spec = make_spec(m, r)?;
    let (degree, codegree) = degree_and_codegree(&spec);
    let criterion = symmetry_criterion(&spec);
    let mut doc = json!({
        "spec": jsonio::spec_json(&spec),
        "degree": degree,
        "codegree": codegree,
        "symmetry_criterion": criterion,
    });
    let mut code = 0u8;
    match method {
        "enumeration" => {
            let e = eulerian_by_enumeration(&spec, limits)?;
            doc["enumeration"] = jsonio::eulerian_result_json(&e);
        }
        "transform" => {
            let t = eulerian_by_transform(&spec)?;
            doc["transform"] = jsonio::eulerian_result_json(&t);
        }
        "both" => {
            let e = eulerian_by_enumeration(&spec, limits)?;
            let t = eulerian_by_transform(&spec)?;
            let agree = e.poly == t.poly;
            doc["enumeration"] = jsonio::eulerian_result_json(&e);
            doc["transform"] = jsonio::eulerian_result_json(&t);
            doc["methods_agree"] = json!(agree);
            if !agree {
                code = 1;
            }
        }
        _ => {
            return Err(CmeError::Parse(format!(
                "unknown method {method:?}; expected enumeration, transform, or both"
            )))
        }
    }
    Ok((doc, code))
}

fn verify_cmd(
    kind_name: &str,
    m: Vec<u32>,
    r: Option<Vec<u32>>,
    caps: VerifyCaps,
    limits: &Limits,
) -> Result<(Value, u8), CmeError> {
    let kind = IdentityKind::from_name(kind_name)
        .ok_or_else(|| CmeError::Parse(format!("unknown identity kind {kind_name:?}")))?;
    let r = r.unwrap_or_else(|| {
        let default = match kind {
            IdentityKind::Classic => 1,
            IdentityKind::LinA | IdentityKind::LinB | IdentityKind::Equidistribution => 2,
            _ => 1,
        };
        vec![default; m.len()]
    });
    let spec = MultisetSpec::new(m, r)?;
    let report = verify_identity(kind, &spec, caps, limits)?;
    let code = u8::from(!report.matched());
    Ok((jsonio::identity_report_json(&report), code))
}

fn certify_cmd(
    poly: Vec<i64>,
    check: &str,
    n: Option<usize>,
    other: Option<Vec<i64>>,
    strict: bool,
) -> Result<(Value, u8), CmeError> {
    let p = IntPoly::from_i64s(&poly);
    let degree = p.degree().unwrap_or(0);
    let n = n.unwrap_or(degree);
    let doc = match check {
        "real-rooted" => {
            let cert = real_root_certificate(&p.to_rational());
            json!({
                "poly": jsonio::poly_json(&p, "x"),
                "certificate": jsonio::certificate_json(&cert),
            })
        }
        "interlacing" => {
            let other = other
                .ok_or_else(|| CmeError::Parse("--check interlacing needs --other".into()))?;
            let q = IntPoly::from_i64s(&other);
            let holds =
                cme_core::analysis::interlaces(&q.to_rational(), &p.to_rational(), strict);
            json!({
                "p": jsonio::poly_json(&p, "x"),
                "q": jsonio::poly_json(&q, "x"),
                "strict": strict,
                "interlaces": holds,
            })
        }
        "bl-suite" => {
            let report = self_interlacing_suite(&p, n)?;
            json!({
                "poly": jsonio::poly_json(&p, "x"),
                "d": n,
                "suite": jsonio::suite_json(&report),
            })
        }
        "shape" => {
            let report = shape_checks(&p, n);
            json!({
                "poly": jsonio::poly_json(&p, "x"),
                "n": n,
                "shape": jsonio::shape_json(&report),
            })
        }
        _ => {
            return Err(CmeError::Parse(format!(
                "unknown check {check:?}; expected real-rooted, interlacing, bl-suite, or shape"
            )))
        }
    };
    Ok((doc, 0))
}

fn seulerian_cmd(
    s: Option<Vec<u32>>,
    hat: Option<Vec<u32>>,
    equalities: Option<Vec<u32>>,
    search_target: Option<Vec<i64>>,
    limits: &Limits,
) -> Result<(Value, u8), CmeError> {
    let chosen = [
        s.is_some(),
        hat.is_some(),
        equalities.is_some(),
        search_target.is_some(),
    ]
    .iter()
    .filter(|&&b| b)
    .count();
    if chosen != 1 {
        return Err(CmeError::Parse(
            "choose exactly one of --s, --hat, --equalities, --search-target".into(),
        ));
    }
    if let Some(s) = s {
        let s = SSequence::new(s)?;
        let poly = s_eulerian_poly(&s, limits)?;
        return Ok((
            json!({ "s": s.entries(), "poly": jsonio::poly_json(&poly, "x") }),
            0,
        ));
    }
    if let Some(args) = hat {
        let [n, r] = two_args(&args, "--hat")?;
        let s = hat_sequence(n as usize, r);
        return Ok((json!({ "n": n, "r": r, "hat": s.entries() }), 0));
    }
    if let Some(args) = equalities {
        let [n, r] = two_args(&args, "--equalities")?;
        let checks = verify_s_equalities(n as usize, r, limits)?;
        let all_equal = checks.iter().all(|c| c.equal);
        let doc = json!({
            "n": n,
            "r": r,
            "checks": checks.iter().map(jsonio::equality_check_json).collect::<Vec<_>>(),
            "all_equal": all_equal,
        });
        return Ok((doc, u8::from(!all_equal)));
    }
    let target = IntPoly::from_i64s(&search_target.unwrap());
    let report = not_s_eulerian_search(&target, limits)?;
    Ok((jsonio::search_report_json(&report), 0))
}

fn two_args(args: &[u32], flag: &str) -> Result<[u32; 2], CmeError> {
    if args.len() != 2 {
        return Err(CmeError::Parse(format!("{flag} takes exactly two values")));
    }
    Ok([args[0], args[1]])
}

fn trees_cmd(
    multiset: Option<Vec<u32>>,
    mode: &str,
    stats: bool,
    narayana: bool,
    gamma: bool,
    partition: Option<Vec<u32>>,
    limits: &Limits,
) -> Result<(Value, u8), CmeError> {
    if let Some(args) = partition {
        let [n, k] = two_args(&args, "--partition")?;
        let p = partition_gh(n as usize, k, limits)?;
        let verified = cme_core::trees::verify_gh_partition(n as usize, k, limits)?;
        let mut doc = jsonio::gh_partition_json(&p);
        doc["matches_decomposition"] = json!(verified);
        return Ok((doc, u8::from(!verified)));
    }
    let multiset = multiset.ok_or_else(|| {
        CmeError::Parse("--multiset is required unless --partition is used".into())
    })?;
    let tree_mode = match mode {
        "weakly-increasing" => TreeMode::WeaklyIncreasing,
        "multiset" => TreeMode::MultisetTree,
        _ => {
            return Err(CmeError::Parse(format!(
                "unknown mode {mode:?}; expected weakly-increasing or multiset"
            )))
        }
    };
    let actions = [stats, narayana, gamma].iter().filter(|&&b| b).count();
    if actions != 1 {
        return Err(CmeError::Parse(
            "choose exactly one of --stats, --narayana, --gamma".into(),
        ));
    }
    if stats {
        let trees = enumerate_trees(&multiset, tree_mode, limits)?;
        let listed: Vec<Value> = trees
            .iter()
            .map(|t| {
                json!({
                    "tree": jsonio::tree_json(t),
                    "stats": jsonio::tree_stats_json(&tree_statistics(t)),
                })
            })
            .collect();
        return Ok((
            json!({ "multiset": multiset, "mode": mode, "count": trees.len(), "trees": listed }),
            0,
        ));
    }
    if narayana {
        let poly = eulerian_narayana(&multiset, limits)?;
        return Ok((
            json!({ "multiset": multiset, "narayana": jsonio::poly_json(&poly, "x") }),
            0,
        ));
    }
    let hist = tree_gamma(&multiset, limits)?;
    Ok((
        json!({
            "multiset": multiset,
            "gamma": hist.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        }),
        0,
    ))
}

/// Deterministic indented rendering of the JSON payload.
fn pretty(value: &Value, indent: usize) -> String {
    let pad = "  ".repeat(indent);
    match value {
        Value::Object(map) => {
            let mut out = String::new();
            for (k, v) in map {
                match v {
                    Value::Object(_) | Value::Array(_) if !is_inline(v) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        out.push_str(&pretty(v, indent + 1));
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", inline(v))),
                }
            }
            out
        }
        Value::Array(items) => {
            let mut out = String::new();
            for item in items {
                if is_inline(item) {
                    out.push_str(&format!("{pad}- {}\n", inline(item)));
                } else {
                    out.push_str(&format!("{pad}-\n"));
                    out.push_str(&pretty(item, indent + 1));
                }
            }
            out
        }
        _ => format!("{pad}{}\n", inline(value)),
    }
}

fn is_inline(value: &Value) -> bool {
    match value {
        Value::Array(items) => items.iter().all(|v| !matches!(v, Value::Object(_))),
        Value::Object(_) => false,
        _ => true,
    }
}

fn inline(value: &Value) -> String {
    value.to_string()
}
