//! JSON views of the library's values.
//!
//! Arbitrary-precision numbers (coefficients, cardinalities, rational
//! interval endpoints) are emitted as decimal strings so nothing overflows a
//! JSON reader; small structural integers (multiplicities, exponents,
//! degrees, caps) stay native. Maps are ordered, so equal inputs give
//! byte-identical documents.

use serde_json::{json, Value};

use crate::analysis::{BlSuiteReport, GammaVector, RootCertificate, ShapeReport, SymmetricDecomposition};
use crate::combinatorics::MultisetSpec;
use crate::eulerian::{EulerianResult, Method};
use crate::identity::{IdentityReport, IdentityStatus};
use crate::poly::{Coeff, IntPoly, Poly, RatPoly};
use crate::s_eulerian::{DecompositionRemarkReport, EqualityCheck, SearchReport};
use crate::series::TruncatedSeries;
use crate::trees::{GhPartition, PlaneTree, TreeStats};

pub fn spec_json(spec: &MultisetSpec) -> Value {
    json!({ "m": spec.m(), "r": spec.r() })
}

fn coeff_strings<C: Coeff>(p: &Poly<C>) -> Vec<String> {
    p.coeffs().iter().map(|c| c.to_string()).collect()
}

pub fn poly_json(p: &IntPoly, var: &str) -> Value {
    json!({ "var": var, "coeffs": coeff_strings(p) })
}

pub fn rat_poly_json(p: &RatPoly, var: &str) -> Value {
    json!({ "var": var, "coeffs": coeff_strings(p) })
}

pub fn series_json(series: &TruncatedSeries, variables: &[String]) -> Value {
    let terms: Vec<Value> = series
        .terms()
        .iter()
        .map(|(exp, coeff)| json!({ "exp": exp, "coeff": coeff.to_string() }))
        .collect();
    json!({ "vars": variables, "caps": series.caps(), "terms": terms })
}

pub fn eulerian_result_json(result: &EulerianResult) -> Value {
    let method = match result.method {
        Method::Enumeration => "enumeration",
        Method::Transform => "transform",
    };
    json!({
        "spec": spec_json(&result.spec),
        "method": method,
        "poly": poly_json(&result.poly, "x"),
        "degree": result.degree,
        "codegree": result.codegree,
        "symmetric_wrt_degree": result.symmetric_wrt_degree,
    })
}

pub fn identity_report_json(report: &IdentityReport) -> Value {
    let mut doc = json!({
        "kind": report.kind.name(),
        "spec": spec_json(&report.spec),
        "caps": { "t_cap": report.caps.t_cap, "var_cap": report.caps.var_cap },
        "variables": report.variables,
        "status": match report.status {
            IdentityStatus::Match => "match",
            IdentityStatus::Mismatch { .. } => "mismatch",
        },
    });
    if let IdentityStatus::Mismatch {
        ref exponents,
        ref lhs,
        ref rhs,
    } = report.status
    {
        doc["witness"] = json!({
            "exp": exponents,
            "lhs": lhs.to_string(),
            "rhs": rhs.to_string(),
        });
    }
    doc
}

pub fn decomposition_json(d: &SymmetricDecomposition) -> Value {
    json!({
        "n": d.n,
        "a": poly_json(&d.a, "x"),
        "b": poly_json(&d.b, "x"),
        "nonnegative": d.is_nonnegative(),
    })
}

pub fn gamma_json(g: &GammaVector) -> Value {
    json!({
        "n": g.n,
        "gammas": g.gammas.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        "nonnegative": g.is_nonnegative(),
    })
}

pub fn shape_json(s: &ShapeReport) -> Value {
    json!({
        "nonnegative": s.nonnegative,
        "unimodal": s.unimodal,
        "log_concave": s.log_concave,
        "alternatingly_increasing": s.alternatingly_increasing,
    })
}

pub fn certificate_json(cert: &RootCertificate) -> Value {
    let roots: Vec<Value> = cert
        .roots
        .iter()
        .map(|r| {
            json!({
                "interval": [r.root.lo().to_string(), r.root.hi().to_string()],
                "multiplicity": r.multiplicity,
            })
        })
        .collect();
    json!({
        "square_free_part": rat_poly_json(&cert.square_free_part, "x"),
        "roots": roots,
        "real_root_count": cert.real_root_count,
        "degree": cert.degree,
        "real_rooted": cert.real_rooted,
    })
}

pub fn suite_json(report: &BlSuiteReport) -> Value {
    let conditions: Vec<Value> = BlSuiteReport::LABELS
        .iter()
        .zip(&report.conditions)
        .map(|(label, c)| json!({ "condition": label, "weak": c.weak, "strict": c.strict }))
        .collect();
    json!({
        "hypothesis_nonnegative": report.hypothesis_nonnegative,
        "decomposition": decomposition_json(&report.decomposition),
        "conditions": conditions,
        "all_weak": report.all_weak(),
        "all_strict": report.all_strict(),
    })
}

pub fn equality_check_json(check: &EqualityCheck) -> Value {
    json!({
        "label": check.label,
        "s": check.s.entries(),
        "s_poly": poly_json(&check.s_poly, "x"),
        "spec": spec_json(&check.spec),
        "eulerian_poly": poly_json(&check.eulerian_poly, "x"),
        "equal": check.equal,
    })
}

pub fn search_report_json(report: &SearchReport) -> Value {
    let candidates: Vec<Value> = report
        .candidates
        .iter()
        .map(|c| {
            json!({
                "s": c.s.entries(),
                "poly": poly_json(&c.poly, "x"),
                "matched": c.matched,
            })
        })
        .collect();
    json!({
        "target": poly_json(&report.target, "x"),
        "candidates": candidates,
        "matches": report.matches.iter().map(|s| s.entries().to_vec()).collect::<Vec<_>>(),
        "pruning_rule": report.pruning_rule,
    })
}

pub fn remark_report_json(report: &DecompositionRemarkReport) -> Value {
    json!({
        "n": report.n,
        "a": poly_json(&report.a, "x"),
        "b": poly_json(&report.b, "x"),
        "a_check": report.a_check.as_ref().map(equality_check_json),
        "b_check": report.b_check.as_ref().map(equality_check_json),
        "passed": report.passed,
    })
}

/// Nested-list tree form: [0,[1,[2]],[1]].
pub fn tree_json(tree: &PlaneTree) -> Value {
    fn node(tree: &PlaneTree, idx: usize) -> Value {
        let mut items = vec![json!(tree.label(idx))];
        for &c in tree.children(idx) {
            items.push(node(tree, c));
        }
        Value::Array(items)
    }
    node(tree, 0)
}

pub fn tree_stats_json(stats: &TreeStats) -> Value {
    json!({
        "internal": stats.internal,
        "leaves": stats.leaves,
        "young_leaves": stats.young_leaves,
    })
}

pub fn gh_partition_json(p: &GhPartition) -> Value {
    json!({
        "g_size": p.g.len(),
        "h_size": p.h.len(),
        "g_poly": poly_json(&p.g_poly, "x"),
        "h_poly": poly_json(&p.h_poly, "x"),
        "g": p.g.iter().map(tree_json).collect::<Vec<_>>(),
        "h": p.h.iter().map(tree_json).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poly_json_shape() {
        let p = IntPoly::from_i64s(&[1, 9, 9, 1]);
        let doc = poly_json(&p, "x");
        assert_eq!(
            doc.to_string(),
            r#"{"coeffs":["1","9","9","1"],"var":"x"}"#
        );
    }

    #[test]
    fn spec_json_shape() {
        let spec = MultisetSpec::new(vec![3, 3], vec![1, 1]).unwrap();
        assert_eq!(spec_json(&spec).to_string(), r#"{"m":[3,3],"r":[1,1]}"#);
    }

    #[test]
    fn tree_json_shape() {
        let tree = crate::trees::perm_to_tree(&[1, 2]);
        assert_eq!(tree_json(&tree).to_string(), "[0,[1,[2]]]");
    }
}
