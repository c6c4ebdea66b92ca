//! Human-readable output.

use crate::output::{BoundsOutput, GroebnerOutput};
use std::fmt::Write;
use subelliptic_core::finite_type::{TypeEstimate, TypeReport};
use subelliptic_core::kohn::{Derivation, Mode, OrderedGenerator};
use subelliptic_core::{rational, Certificate, Outcome};

fn rule(d: &Derivation) -> String {
    match d {
        Derivation::JacobianMix { k, radical_children, .. } if radical_children.is_empty() => format!("jacobian k={k}"),
        Derivation::JacobianMix { k, radical_children, .. } => format!("jacobian k={k} of J~{radical_children:?}"),
        Derivation::Inherited { child } => format!("inherited J~[{child}]"),
        Derivation::RadicalRoot { m, support, .. } => format!("radical m={m} over J{support:?}"),
    }
}

fn generators(out: &mut String, label: &str, gens: &[OrderedGenerator], names: &[String]) {
    let _ = writeln!(out, "  {label}:");
    if gens.is_empty() {
        let _ = writeln!(out, "    (none)");
    }
    for (i, g) in gens.iter().enumerate() {
        let _ = writeln!(
            out,
            "    [{i}] {}  order {}  {}",
            g.poly.display_with(names),
            rational::to_string(&g.order),
            rule(&g.derivation)
        );
    }
}

pub fn certificate(cert: &Certificate, names: &[String], trace: bool) -> String {
    let mut out = String::new();
    match &cert.outcome {
        Outcome::Subelliptic { epsilon, level, .. } => {
            let _ = writeln!(out, "outcome: subelliptic");
            let _ = writeln!(out, "epsilon: {}", rational::to_string(epsilon));
            let _ = writeln!(out, "level: {level}");
        }
        Outcome::Exhausted { levels_run } => {
            let _ = writeln!(out, "outcome: exhausted after {levels_run} levels");
        }
    }
    if trace {
        for state in &cert.history {
            let mode = match state.mode {
                Mode::FullRadical => "full radical",
                Mode::CertifiedMembers => "certified members",
            };
            let _ = writeln!(out, "level {} ({mode})", state.level);
            generators(&mut out, "J", &state.j, names);
            generators(&mut out, "J~", &state.j_tilde, names);
        }
    }
    if let Some(tree) = cert.witness_tree() {
        let _ = writeln!(out, "witness derivation:");
        out.push_str(&tree.render(Some(names)));
    }
    for w in cert.warnings() {
        let _ = writeln!(out, "warning: {w}");
    }
    out
}

pub fn type_report(report: &TypeReport, names: &[String]) -> String {
    let mut out = String::new();
    match report.p {
        Some(p) => {
            let _ = writeln!(out, "finite type order p: {p}");
        }
        None => {
            let _ = writeln!(out, "finite type order p: none up to {}", report.p_cap);
        }
    }
    let _ = writeln!(out, "zero-dimensional: {}", report.zero_dim);
    let curve = |c: &subelliptic_core::finite_type::MonomialCurve| {
        let coords: Vec<String> = c
            .coefficients
            .iter()
            .zip(&c.exponents)
            .zip(names)
            .filter(|((k, _), _)| **k != rational::int(0))
            .map(|((k, e), v)| format!("{v} = {}*t^{e}", rational::to_string(k)))
            .collect();
        coords.join(", ")
    };
    match &report.type_estimate {
        TypeEstimate::Finite { value, curve: c } => {
            let _ = writeln!(out, "type estimate: {} along {}", rational::to_string(value), curve(c));
        }
        TypeEstimate::Infinite { curve: c } => {
            let _ = writeln!(out, "type estimate: infinite, curve {} lies in the zero set", curve(c));
        }
    }
    if !report.q_candidates.is_empty() {
        let q: Vec<String> = report.q_candidates.iter().map(u32::to_string).collect();
        let _ = writeln!(out, "admissible q: {}", q.join(", "));
    }
    for c in &report.inequality_checks {
        let _ = writeln!(out, "  [{}] {}", if c.holds { "ok" } else { "FAIL" }, c.name);
    }
    out
}

pub fn groebner(g: &GroebnerOutput) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "basis ({}):", g.order);
    for b in &g.basis {
        let _ = writeln!(out, "  {b}");
    }
    if let Some(nf) = &g.normal_form {
        let _ = writeln!(out, "normal form: {nf}");
    }
    if let Some(m) = g.member {
        let what = if g.query == "member" { "member" } else { "radical member" };
        let _ = writeln!(out, "{what}: {}", if m { "yes" } else { "no" });
    }
    out
}

pub fn bounds(b: &BoundsOutput) -> String {
    let mut out = String::new();
    match b {
        BoundsOutput::Matsusaka(m) => {
            let _ = writeln!(out, "C_{} = {}", m.n, m.c_n);
            let _ = writeln!(out, "L-coefficient of K~_X: {}", m.k_coefficient);
            let _ = writeln!(out, "outer exponent: {}", m.exponent);
            let _ = writeln!(out, "bound: {}", rational::to_string(&m.bound));
        }
        BoundsOutput::Ot { interval, width, decimal, .. } => {
            let _ = writeln!(out, "8 pi e sqrt(2 + 1/e) ~ {decimal}");
            let _ = writeln!(out, "enclosure: [{}, {}]", interval[0], interval[1]);
            let _ = writeln!(out, "width: {width}");
        }
        BoundsOutput::Skoda(s) => {
            let _ = writeln!(out, "alpha = {}", rational::to_string(&s.alpha));
            let _ = writeln!(out, "q = {}", s.q);
            let _ = writeln!(out, "inner exponent 2*alpha*q + 2 = {}", rational::to_string(&s.inner_exponent));
            let _ = writeln!(out, "outer exponent 2*alpha*q = {}", rational::to_string(&s.outer_exponent));
            let _ = writeln!(
                out,
                "identity 2*alpha*q + 2 = 2(n+k+1) = {}: {}",
                s.identity_rhs,
                if s.identity_holds { "holds" } else { "FAILS" }
            );
        }
        BoundsOutput::Generation { model, degree, truncation, bound, holds, .. } => {
            let _ = writeln!(out, "{model}, truncated at degree {truncation}");
            let _ = writeln!(out, "generation degree: {degree}");
            if let (Some(b), Some(h)) = (bound, holds) {
                let _ = writeln!(out, "bound (n+2)a+b-1 = {b}: {}", if *h { "respected" } else { "VIOLATED" });
            }
        }
    }
    out
}
