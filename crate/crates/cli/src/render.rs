use serde_json::{json, Value};

use kq_core::symfun::StrictPartition;
use kq_core::{Beta, BetaScalar};

use crate::compute::{Computed, Family, PairReport};
use crate::verify::{Check, Scale};
use crate::{Out, Suite};

pub fn beta_label(b: &Beta) -> String {
    if b.is_symbolic() {
        return "sym".into();
    }
    match b.scalar().as_rational() {
        Some(q) => q.to_string(),
        None => b.scalar().to_string(),
    }
}

fn parts(lam: &StrictPartition) -> Value {
    json!(lam.parts())
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json values always serialize")
}

fn report(c: &Computed) -> String {
    if c.family == Family::Gp {
        "single construction".into()
    } else if c.routes.len() == 1 {
        format!("single route: {}", c.routes[0].name())
    } else {
        let names: Vec<&str> = c.routes.iter().map(|r| r.name()).collect();
        format!("routes agree: {}", names.join(", "))
    }
}

pub fn computed(c: &Computed, out: Out) -> String {
    let sym = c.family.symbol();
    match out {
        Out::Json => pretty(&json!({
            "function": sym,
            "partition": parts(&c.lam),
            "degree_bound": c.degree,
            "beta": beta_label(&c.beta),
            "routes": c.routes.iter().map(|r| r.name()).collect::<Vec<_>>(),
            "report": report(c),
            "series": c.value.to_json(),
        })),
        Out::Latex => format!("% {}\n{sym}_{{{}}} = {}", report(c), c.lam, c.value.to_latex()),
        Out::Text => format!(
            "{sym}_{} = {}\n[degree <= {}, beta = {}] {}",
            c.lam,
            c.value,
            c.degree,
            beta_label(&c.beta),
            report(c)
        ),
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "agrees"
    } else {
        "DISAGREES"
    }
}

fn scalar_text(s: &BetaScalar, out: Out) -> String {
    if out == Out::Latex {
        s.to_latex()
    } else {
        s.to_string()
    }
}

pub fn pair(r: &PairReport, out: Out) -> String {
    match out {
        Out::Json => pretty(&json!({
            "lambda": parts(&r.lam),
            "mu": parts(&r.mu),
            "degree_bound": r.degree,
            "beta": beta_label(&r.beta),
            "o": { "value": r.with_o.to_json(), "closed_form": r.o_closed_form.to_json(), "agree": r.o_agrees() },
            "gp": { "value": r.with_gp.to_json(), "expected": r.gp_expected.to_json(), "agree": r.gp_agrees() },
        })),
        _ => {
            let (l, m) = (&r.lam, &r.mu);
            let s = |x: &BetaScalar| scalar_text(x, out);
            format!(
                "<GQ_{l}, o_{m}> = {}  closed form {}  {}\n<GQ_{l}, gp_{m}> = {}  expected {}  {}",
                s(&r.with_o),
                s(&r.o_closed_form),
                verdict(r.o_agrees()),
                s(&r.with_gp),
                s(&r.gp_expected),
                verdict(r.gp_agrees())
            )
        }
    }
}

fn suite_name(s: Suite) -> &'static str {
    match s {
        Suite::Fock => "fock",
        Suite::Gq => "gq",
        Suite::Dual => "dual",
        Suite::All => "all",
    }
}

pub fn checks(suite: Suite, cfg: &Scale, cs: &[Check], out: Out) -> String {
    let passed = cs.iter().filter(|c| c.ok).count();
    if out == Out::Json {
        let items: Vec<Value> =
            cs.iter().map(|c| json!({ "name": c.name, "ok": c.ok, "detail": c.detail })).collect();
        return pretty(&json!({
            "suite": suite_name(suite),
            "degree_bound": cfg.degree,
            "max_weight": cfg.max_weight,
            "vars": cfg.vars,
            "beta": beta_label(&cfg.beta),
            "checks": items,
            "passed": passed == cs.len(),
        }));
    }
    let mut lines: Vec<String> = cs
        .iter()
        .map(|c| match &c.detail {
            Some(d) if !c.ok => format!("FAIL  {}: {d}", c.name),
            _ => format!("PASS  {}", c.name),
        })
        .collect();
    lines.push(format!(
        "{}: {passed}/{} identities hold (degree <= {}, |λ| <= {}, beta = {})",
        suite_name(suite),
        cs.len(),
        cfg.degree,
        cfg.max_weight,
        beta_label(&cfg.beta)
    ));
    lines.join("\n")
}
