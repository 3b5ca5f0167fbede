use rayon::prelude::*;

use kq_core::dualq::{bilinear_pair, inner_product_formula, DualEngine};
use kq_core::gq::{gq_oracle, GqEngine};
use kq_core::symfun::{from_finite, PSeries, StrictPartition};
use kq_core::{Beta, BetaScalar, KqError};

use crate::Failure;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Route {
    Pf1,
    Pf2,
    Fermionic,
    Oracle,
}

impl Route {
    pub fn parse(s: &str) -> Result<Self, Failure> {
        match s.trim() {
            "pf1" => Ok(Route::Pf1),
            "pf2" => Ok(Route::Pf2),
            "fermionic" => Ok(Route::Fermionic),
            "oracle" => Ok(Route::Oracle),
            other => Err(Failure::Invalid(format!("unknown route {other:?}"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Route::Pf1 => "pf1",
            Route::Pf2 => "pf2",
            Route::Fermionic => "fermionic",
            Route::Oracle => "oracle",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Gq,
    O,
    Gp,
}

impl Family {
    pub fn symbol(self) -> &'static str {
        match self {
            Family::Gq => "GQ",
            Family::O => "o",
            Family::Gp => "gp",
        }
    }
}

pub struct Config {
    pub degree: usize,
    pub vars: usize,
    pub beta: Beta,
    pub routes: Vec<Route>,
    pub corrupt_f_table: bool,
}

pub struct Computed {
    pub family: Family,
    pub lam: StrictPartition,
    pub degree: usize,
    pub beta: Beta,
    /// Empty for gp, which has a single construction.
    pub routes: Vec<Route>,
    pub value: PSeries,
}

/// Lists the coefficients where two series differ, at most a handful.
pub fn diff(a: &PSeries, b: &PSeries) -> String {
    let d = a.sub(b);
    let mut lines: Vec<String> = d
        .terms()
        .keys()
        .take(8)
        .map(|lam| format!("p{lam}: {} vs {}", a.coeff(lam), b.coeff(lam)))
        .collect();
    if d.terms().len() > 8 {
        lines.push(format!("... {} coefficients differ", d.terms().len()));
    }
    lines.join("; ")
}

pub fn compute(family: Family, lam: &StrictPartition, cfg: &Config) -> Result<Computed, Failure> {
    let d = cfg.degree;
    let mut routes = cfg.routes.clone();
    routes.sort();
    routes.dedup();
    if family == Family::Gp {
        if !routes.is_empty() {
            return Err(Failure::Invalid("gp has a single construction; drop --routes".into()));
        }
        let value = DualEngine::new(d, cfg.beta.clone()).gp(lam)?;
        return Ok(Computed { family, lam: lam.clone(), degree: d, beta: cfg.beta.clone(), routes, value });
    }
    if routes.is_empty() {
        routes = vec![Route::Pf1, Route::Pf2, Route::Fermionic];
    }
    let oracle = routes.contains(&Route::Oracle);
    if oracle {
        if family != Family::Gq {
            return Err(Failure::Invalid("the oracle route exists only for GQ".into()));
        }
        if cfg.vars < d {
            return Err(Failure::Invalid(format!("the oracle needs --vars >= --degree, got {} < {d}", cfg.vars)));
        }
        if cfg.vars > 8 {
            return Err(KqError::TooManyVariables(cfg.vars).into());
        }
    }

    let gq = GqEngine::new(d, cfg.beta.clone());
    let gq = if cfg.corrupt_f_table { gq.with_corrupt_f_table() } else { gq };
    let dual = DualEngine::new(d, cfg.beta.clone());
    let values: Vec<(Route, PSeries)> = routes
        .par_iter()
        .map(|&r| {
            let v = match (family, r) {
                (Family::Gq, Route::Pf1) => gq.pfaffian_1(lam),
                (Family::Gq, Route::Pf2) => gq.pfaffian_2(lam),
                (Family::Gq, Route::Fermionic) => gq.fermionic(lam),
                (Family::O, Route::Pf1) => dual.pfaffian_1(lam),
                (Family::O, Route::Pf2) => dual.pfaffian_2(lam),
                (Family::O, Route::Fermionic) => dual.fermionic(lam),
                (_, _) => gq_oracle(lam, cfg.vars, d, &cfg.beta).and_then(|f| from_finite(&f, cfg.vars, d)),
            };
            v.map(|v| (r, v))
        })
        .collect::<Result<_, _>>()?;

    let (first, value) = &values[0];
    for (r, v) in &values[1..] {
        if v != value {
            return Err(Failure::Violation(format!(
                "{}{lam}: {} and {} disagree: {}",
                family.symbol(),
                first.name(),
                r.name(),
                diff(value, v)
            )));
        }
    }
    Ok(Computed { family, lam: lam.clone(), degree: d, beta: cfg.beta.clone(), routes, value: value.clone() })
}

pub struct PairReport {
    pub lam: StrictPartition,
    pub mu: StrictPartition,
    pub degree: usize,
    pub beta: Beta,
    pub with_o: BetaScalar,
    pub o_closed_form: BetaScalar,
    pub with_gp: BetaScalar,
    pub gp_expected: BetaScalar,
}

impl PairReport {
    pub fn o_agrees(&self) -> bool {
        self.with_o == self.o_closed_form
    }

    pub fn gp_agrees(&self) -> bool {
        self.with_gp == self.gp_expected
    }

    pub fn agrees(&self) -> bool {
        self.o_agrees() && self.gp_agrees()
    }
}

pub fn pair(lam: &StrictPartition, mu: &StrictPartition, degree: usize, beta: &Beta) -> Result<PairReport, Failure> {
    let f = GqEngine::new(degree, beta.clone()).pfaffian_1(lam)?;
    let dual = DualEngine::new(degree, beta.clone());
    let o = dual.pfaffian_1(mu)?;
    let gp = dual.gp(mu)?;
    Ok(PairReport {
        lam: lam.clone(),
        mu: mu.clone(),
        degree,
        beta: beta.clone(),
        with_o: bilinear_pair(&f, &o, beta)?,
        o_closed_form: inner_product_formula(lam, mu, beta),
        with_gp: bilinear_pair(&f, &gp, beta)?,
        gp_expected: if lam == mu { BetaScalar::one() } else { BetaScalar::zero() },
    })
}
