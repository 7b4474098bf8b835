//! Problem files, command dispatch and JSON output for the `dfan` binary.

pub mod parse;
pub mod problem;

use serde_json::{json, Value};

use crate::coeffs::{self, ParamFraction, ParamPoly, Rat};
use crate::division::{denominator_certificate, divide, divide_mod_q, DivisionResult};
use crate::error::{Error, Result};
use crate::fan::{enumerate_fan, oracle_fan, FanOptions, GroebnerFan};
use crate::hdo::{render_monomial, Exponent, HOperator, OrderSpec, Weight};
use crate::parametric::{
    comprehensive_fan, constant_fan_certificate, exceptional_check, fan_matches_at, homogenization_check,
    newton_stable_at, sample_points, specialize_ideal, ExceptionalCheck, DEFAULT_MAX_DEPTH,
};
use crate::polyhedra::RelOpenCone;
use crate::standard::{complete, generic_sb, reduced_basis, reduced_generic_sb, CompletionOptions};

pub use parse::Names;
pub use problem::{parse_problem, ProblemFile};

/// Default sample count of `oracle-fan`.
pub const DEFAULT_ORACLE_SAMPLES: usize = 200;
/// Default sample count of `certify`.
pub const DEFAULT_CERTIFY_SAMPLES: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verb {
    Div,
    Sb,
    Reduce,
    Gensb,
    Fan,
    Compfan,
    Certify,
    OracleFan,
    Specialize,
}

impl Verb {
    pub fn name(self) -> &'static str {
        match self {
            Verb::Div => "div",
            Verb::Sb => "sb",
            Verb::Reduce => "reduce",
            Verb::Gensb => "gensb",
            Verb::Fan => "fan",
            Verb::Compfan => "compfan",
            Verb::Certify => "certify",
            Verb::OracleFan => "oracle-fan",
            Verb::Specialize => "specialize",
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Flags {
    pub cap: Option<u32>,
    pub guard: Option<u32>,
    pub samples: Option<usize>,
    pub max_cells: Option<usize>,
    pub max_depth: Option<usize>,
    /// Flat `u… v…` list separated by commas or spaces.
    pub seed_weight: Option<String>,
    /// `name=value` pairs separated by commas.
    pub at: Option<String>,
}

/// Exit status for an error: 2 for usage and input errors, 1 otherwise.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Syntax { .. } | Error::UnknownName { .. } | Error::Usage(_) => 2,
        _ => 1,
    }
}

fn usage(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}

struct Ctx<'a> {
    p: &'a ProblemFile,
    flags: &'a Flags,
}

impl Ctx<'_> {
    fn cap(&self) -> u32 {
        self.flags.cap.unwrap_or(self.p.cap)
    }

    fn completion(&self) -> CompletionOptions {
        let mut o = CompletionOptions::new(self.cap());
        o.guard = self.flags.guard;
        o
    }

    fn fan_options(&self) -> Result<FanOptions> {
        let mut o = FanOptions::new(self.cap());
        o.guard = self.flags.guard;
        if let Some(m) = self.flags.max_cells {
            o.max_cells = m;
        }
        if let Some(s) = &self.flags.seed_weight {
            let flat = s
                .split([',', ' '])
                .filter(|t| !t.is_empty())
                .map(|t| parse::parse_rational(t).ok_or_else(|| usage(format!("bad weight entry `{}`", t))))
                .collect::<Result<Vec<_>>>()?;
            if flat.len() != 2 * self.p.n() {
                return Err(usage(format!("--seed-weight needs {} entries", 2 * self.p.n())));
            }
            let w = Weight::from_flat(&flat);
            w.check_admissible()?;
            o.seed = Some(w);
        } else if let Some(w) = &self.p.weight {
            o.seed = Some(w.clone());
        }
        Ok(o)
    }

    fn point(&self) -> Result<Option<Vec<Rat>>> {
        let Some(values) = &self.flags.at else {
            return Ok(None);
        };
        let params = &self.p.names.params;
        let mut vals: Vec<Option<Rat>> = vec![None; params.len()];
        for part in values.split(',').filter(|s| !s.trim().is_empty()) {
            let (name, val) = part
                .split_once('=')
                .ok_or_else(|| usage(format!("expected name=value in `{}`", part)))?;
            let i = params
                .iter()
                .position(|p| p == name.trim())
                .ok_or_else(|| usage(format!("unknown parameter `{}`", name.trim())))?;
            vals[i] = Some(parse::parse_rational(val).ok_or_else(|| usage(format!("bad value `{}`", val)))?);
        }
        vals.into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| usage(format!("no value for `{}`", params[i]))))
            .collect::<Result<Vec<_>>>()
            .map(Some)
    }

    /// The ideal over `ℚ`: parameter-free input, or input specialized with `--at`.
    fn rational_ideal(&self) -> Result<Option<Vec<HOperator<Rat>>>> {
        match self.point()? {
            Some(y0) => Ok(Some(specialize_ideal(&self.p.ideal, &y0)?)),
            None if self.p.m() == 0 => Ok(Some(specialize_ideal(&self.p.ideal, &[])?)),
            None => Ok(None),
        }
    }

    fn op<C: coeffs::Coeff>(&self, g: &HOperator<C>, ord: Option<&OrderSpec>) -> String {
        g.render(&self.p.names.vars, &self.p.names.params, ord)
    }

    fn ops<C: coeffs::Coeff>(&self, gs: &[HOperator<C>], ord: Option<&OrderSpec>) -> Vec<String> {
        gs.iter().map(|g| self.op(g, ord)).collect()
    }

    fn poly(&self, p: &ParamPoly) -> String {
        p.fmt_with(&self.p.names.params)
    }

    fn mono(&self, e: &Exponent) -> String {
        let s = render_monomial(e, &self.p.names.vars);
        if s.is_empty() {
            "1".into()
        } else {
            s
        }
    }

    fn monos(&self, es: &[Exponent]) -> Vec<String> {
        es.iter().map(|e| self.mono(e)).collect()
    }
}

fn rats(v: &[Rat]) -> Vec<String> {
    v.iter().map(|c| c.to_string()).collect()
}

fn weight_json(w: &Weight) -> Value {
    json!({ "u": rats(&w.u), "v": rats(&w.v) })
}

fn cone_json(c: &RelOpenCone) -> Value {
    let forms = |fs: &[Vec<Rat>]| fs.iter().map(|f| rats(f)).collect::<Vec<_>>();
    json!({
        "dimension": c.dimension(),
        "equalities": forms(&c.equalities),
        "strict": forms(&c.strict),
        "interior_point": c.interior_point().map(|p| rats(&p)).unwrap_or_default(),
    })
}

fn fan_json<C: coeffs::Coeff>(ctx: &Ctx, fan: &GroebnerFan<C>) -> Value {
    let cells: Vec<Value> = fan
        .cells
        .iter()
        .map(|c| {
            json!({
                "cone": cone_json(&c.cone),
                "grading": c.grading.iter().map(|&i| ctx.p.names.vars[i].clone()).collect::<Vec<_>>(),
                "witness": weight_json(&c.witness),
                "basis": ctx.ops(&c.basis.elements, Some(&c.basis.ord)),
                "corners": ctx.monos(&c.basis.corners),
                "h": ctx.poly(&c.basis.h),
            })
        })
        .collect();
    json!({
        "n": fan.n,
        "cap": fan.cap,
        "cap_certified": fan.cap_certified,
        "cell_count": fan.cells.len(),
        "cells": cells,
    })
}

fn division_json<C: coeffs::Coeff>(ctx: &Ctx, res: &DivisionResult<C>, ord: &OrderSpec, certified: bool) -> Value {
    json!({
        "quotients": ctx.ops(&res.quotients, Some(ord)),
        "remainder": ctx.op(&res.remainder, Some(ord)),
        "t": ctx.op(&res.t_part, Some(ord)),
        "denominator_steps": res.denom_certificate,
        "denominator_certificate": certified,
        "cap": res.cap,
        "tainted": res.tainted,
    })
}

fn run_div(ctx: &Ctx) -> Result<Value> {
    let cap = ctx.cap();
    let gens: Vec<_> = ctx.p.ideal.iter().map(|g| g.truncate(cap)).collect();
    if gens.len() < 2 {
        return Err(usage("div needs the dividend and at least one divisor as ideal lines"));
    }
    let ord = ctx.p.order_spec();
    let q = ctx.p.q_ideal();
    let (p, divisors) = (&gens[0], &gens[1..]);
    let res = if q.is_zero_ideal() {
        divide(p, divisors, &ord)?
    } else {
        let mut h = ParamPoly::one();
        for (j, g) in divisors.iter().enumerate() {
            let l = g.leading_mod(&ord, &q).map_err(|_| Error::DivisorInQ(j))?;
            h = &h * l.lc.num();
        }
        divide_mod_q(p, divisors, &ord, &q, &h)?
    };
    let cert = denominator_certificate(&res, p, divisors);
    Ok(division_json(ctx, &res, &ord, cert))
}

fn run_sb(ctx: &Ctx, reduced: bool) -> Result<Value> {
    let ord = ctx.p.order_spec();
    let opts = ctx.completion();
    if let Some(gens) = ctx.rational_ideal()? {
        let sb = if reduced {
            reduced_basis(&gens, &ord, &opts)?
        } else {
            complete(&gens, &ord, &opts)?
        };
        return Ok(json!({
            "basis": ctx.ops(&sb.elements, Some(&ord)),
            "corners": ctx.monos(&sb.corners),
            "reduced": sb.reduced,
            "cap": sb.cap,
            "cap_certified": sb.cap_certified,
            "tainted": sb.tainted,
        }));
    }
    run_gensb(ctx, reduced)
}

fn run_gensb(ctx: &Ctx, reduced: bool) -> Result<Value> {
    let ord = ctx.p.order_spec();
    let q = ctx.p.q_ideal();
    let opts = ctx.completion();
    let cert = if reduced {
        reduced_generic_sb(&ctx.p.ideal, &ord, &q, &opts)?
    } else {
        generic_sb(&ctx.p.ideal, &ord, &q, &opts)?
    };
    Ok(json!({
        "basis": ctx.ops(&cert.basis, Some(&ord)),
        "corners": ctx.monos(&cert.corners),
        "h": ctx.poly(&cert.h),
        "q": cert.q.generators().iter().map(|g| ctx.poly(g)).collect::<Vec<_>>(),
        "reduced": cert.reduced,
        "cap": cert.cap,
        "cap_certified": cert.cap_certified,
        "tainted": cert.tainted,
        "lc_condition": cert.lc_condition(),
        "denominators_divide_h_power": cert.denominators_divide_h_power(),
    }))
}

fn run_fan(ctx: &Ctx) -> Result<Value> {
    let opts = ctx.fan_options()?;
    if let Some(gens) = ctx.rational_ideal()? {
        let fan = enumerate_fan(&gens, &ctx.p.order, &opts)?;
        return Ok(fan_json(ctx, &fan));
    }
    let cert = constant_fan_certificate(&ctx.p.ideal, &ctx.p.q_ideal(), &ctx.p.order, &opts)?;
    let mut doc = fan_json(ctx, &cert.fan);
    doc["h"] = json!(ctx.poly(&cert.h));
    Ok(doc)
}

fn run_compfan(ctx: &Ctx) -> Result<Value> {
    let opts = ctx.fan_options()?;
    let depth = ctx.flags.max_depth.unwrap_or(DEFAULT_MAX_DEPTH);
    let cf = comprehensive_fan(&ctx.p.ideal, ctx.p.m(), &ctx.p.names.params, &ctx.p.order, &opts, depth)?;
    let strata: Vec<Value> = cf
        .strata
        .iter()
        .map(|(s, fan)| {
            json!({
                "description": s.description,
                "q": s.q.generators().iter().map(|g| ctx.poly(g)).collect::<Vec<_>>(),
                "h": ctx.poly(&s.h),
                "depth": s.depth,
                "verified": s.verified,
                "fan": fan_json(ctx, fan),
            })
        })
        .collect();
    let refinement: Vec<Value> = cf
        .refinement
        .iter()
        .map(|r| json!({ "cone": cone_json(&r.cone), "cells": r.cells }))
        .collect();
    Ok(json!({ "strata": strata, "refinement": refinement }))
}

fn run_certify(ctx: &Ctx) -> Result<Value> {
    let opts = ctx.fan_options()?;
    let q = ctx.p.q_ideal();
    let gens = &ctx.p.ideal;
    let cert = constant_fan_certificate(gens, &q, &ctx.p.order, &opts)?;
    let count = ctx.flags.samples.unwrap_or(DEFAULT_CERTIFY_SAMPLES);
    let points = sample_points(ctx.p.m(), &q, &cert.h, count);
    let mut checks = Vec::new();
    let mut passed = true;
    for y0 in &points {
        let fan_ok = fan_matches_at(gens, &cert.fan, y0, &ctx.p.order, &opts)?;
        let newton_ok = newton_stable_at(&cert, y0)?;
        let homog_ok = ctx.p.homogenized || homogenization_check(gens, &q, y0, &ctx.p.order, ctx.cap())?;
        passed &= fan_ok && newton_ok && homog_ok;
        checks.push(json!({
            "at": rats(y0),
            "fan_equal": fan_ok,
            "newton_stable": newton_ok,
            "staircase_equal": homog_ok,
        }));
    }
    let exceptional: Vec<Value> = crate::sample::param_grid(ctx.p.m(), 64)
        .into_iter()
        .filter(|y| q.generators().iter().all(|g| g.eval(y) == Rat::from_integer(0.into())))
        .filter(|y| cert.h.eval(y) == Rat::from_integer(0.into()))
        .take(3)
        .map(|y0| {
            let verdict = match exceptional_check(gens, &cert.fan, &y0, &ctx.p.order, &opts) {
                ExceptionalCheck::Differs => json!("differs"),
                ExceptionalCheck::Inapplicable(why) => json!(format!("inapplicable: {}", why)),
            };
            json!({ "at": rats(&y0), "result": verdict })
        })
        .collect();
    Ok(json!({
        "h": ctx.poly(&cert.h),
        "h_prime": ctx.poly(&cert.h_prime),
        "pieces": cert.pieces.iter().map(|p| ctx.poly(p)).collect::<Vec<_>>(),
        "fan": fan_json(ctx, &cert.fan),
        "samples": checks,
        "exceptional": exceptional,
        "passed": passed,
    }))
}

fn run_oracle(ctx: &Ctx) -> Result<Value> {
    let gens = ctx
        .rational_ideal()?
        .ok_or_else(|| usage("oracle-fan needs a parameter-free ideal or --at"))?;
    let samples = ctx.flags.samples.unwrap_or(DEFAULT_ORACLE_SAMPLES);
    let groups = oracle_fan(&gens, &ctx.p.order, ctx.cap(), samples)?;
    let ord = OrderSpec::new(ctx.p.order.clone(), vec![], true);
    let out: Vec<Value> = groups
        .iter()
        .map(|g| {
            json!({
                "basis": ctx.ops(&g.basis, Some(&ord)),
                "grading": g.grading.iter().map(|&i| ctx.p.names.vars[i].clone()).collect::<Vec<_>>(),
                "members": g.members.iter().map(weight_json).collect::<Vec<_>>(),
            })
        })
        .collect();
    Ok(json!({ "samples": samples, "groups": out }))
}

fn run_specialize(ctx: &Ctx) -> Result<Value> {
    let y0 = ctx.point()?.ok_or_else(|| usage("specialize needs --at"))?;
    let gens = specialize_ideal(&ctx.p.ideal, &y0)?;
    Ok(json!({ "at": rats(&y0), "ideal": ctx.ops(&gens, Some(&ctx.p.order_spec())) }))
}

/// Runs one verb and returns its output document.
pub fn run_command(verb: Verb, problem: &ProblemFile, flags: &Flags) -> Result<Value> {
    if flags.cap == Some(0) {
        return Err(usage("--cap must be positive"));
    }
    let ctx = Ctx { p: problem, flags };
    let body = match verb {
        Verb::Div => run_div(&ctx),
        Verb::Sb => run_sb(&ctx, false),
        Verb::Reduce => run_sb(&ctx, true),
        Verb::Gensb => run_gensb(&ctx, false),
        Verb::Fan => run_fan(&ctx),
        Verb::Compfan => run_compfan(&ctx),
        Verb::Certify => run_certify(&ctx),
        Verb::OracleFan => run_oracle(&ctx),
        Verb::Specialize => run_specialize(&ctx),
    }?;
    Ok(json!({ "verb": verb.name(), "result": body }))
}

/// Parses `text` and runs `verb`, rendering the document as pretty JSON.
pub fn run_text(verb: Verb, text: &str, flags: &Flags) -> Result<String> {
    let problem = parse_problem(text)?;
    let doc = run_command(verb, &problem, flags)?;
    Ok(serde_json::to_string_pretty(&doc).expect("serializable"))
}

/// Parameter-free operators over `Frac(C)` from operators over `ℚ`.
pub fn lift(gens: &[HOperator<Rat>]) -> Vec<HOperator<ParamFraction>> {
    gens.iter().map(HOperator::from_rat_op).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const SERIES: &str = "params y\nvars x1 x2\norder antigraded_lex x2>x1\ncap 5\nideal y*x2 - x1*x2 + x1\n";

    #[test]
    fn reduce_series_example() {
        let p = parse_problem(SERIES).unwrap();
        let doc = run_command(Verb::Reduce, &p, &Flags::default()).unwrap();
        assert_eq!(
            doc["result"]["basis"],
            json!(["x2 + x1/y + x1^2/y^2 + x1^3/y^3 + x1^4/y^4 + x1^5/y^5"])
        );
        assert_eq!(doc["result"]["h"], json!("y"));
    }

    #[test]
    fn specialize_series_example() {
        let p = parse_problem(SERIES).unwrap();
        let flags = Flags {
            at: Some("y=1".into()),
            ..Flags::default()
        };
        let doc = run_command(Verb::Specialize, &p, &flags).unwrap();
        let text = doc["result"]["ideal"][0].as_str().unwrap();
        let names = Names {
            params: vec![],
            vars: vec!["x1".into(), "x2".into()],
        };
        let got = parse::parse_operator(text, &names, false, 1, 1).unwrap();
        let want = parse::parse_operator("x2 - x1*x2 + x1", &names, false, 1, 1).unwrap();
        assert!(got.eq_terms(&want));
    }

    #[test]
    fn fan_of_derivation() {
        let p = parse_problem("vars x1\nideal dx1\n").unwrap();
        let doc = run_command(Verb::Fan, &p, &Flags::default()).unwrap();
        assert!(doc["result"]["cell_count"].as_u64().unwrap() >= 2);
        assert!(doc["result"]["cells"][0]["grading"].is_array());
    }

    #[test]
    fn exit_codes() {
        let flags = Flags::default();
        let e = run_text(Verb::Sb, "vars x\nideal x + w\n", &flags).unwrap_err();
        assert_eq!(exit_code(&e), 2);
        let p = parse_problem(SERIES).unwrap();
        let e = run_command(Verb::Specialize, &p, &flags).unwrap_err();
        assert_eq!(exit_code(&e), 2);
        let p = parse_problem("params y\nvars x\nideal x/y\n").unwrap();
        let at = Flags {
            at: Some("y=0".into()),
            ..Flags::default()
        };
        let e = run_command(Verb::Specialize, &p, &at).unwrap_err();
        assert_eq!(exit_code(&e), 1);
    }

    #[test]
    fn output_is_deterministic() {
        let flags = Flags::default();
        let a = run_text(Verb::Reduce, SERIES, &flags).unwrap();
        let b = run_text(Verb::Reduce, SERIES, &flags).unwrap();
        assert_eq!(a, b);
    }
}
