//! Line-based problem files.
//!
//! ```text
//! # series example
//! params y
//! vars x1 x2
//! order antigraded_lex x2>x1
//! cap 5
//! ideal y*x2 - x1*x2 + x1
//! ```
//!
//! Keys: `params`, `vars`, `order`, `weight` (flat `u… v…`), `cap`, `q`
//! (one parameter polynomial per line) and `ideal` (one generator per line).

use crate::coeffs::{ParamFraction, ParamIdeal, ParamPoly};
use crate::error::{Error, Result};
use crate::hdo::{BaseOrder, HOperator, OrderSpec, Weight};

use super::parse::{mentions_z, parse_operator, parse_param_poly, parse_rational, Names};

pub const DEFAULT_CAP: u32 = 5;

#[derive(Clone, Debug, PartialEq)]
pub struct ProblemFile {
    pub names: Names,
    pub order: BaseOrder,
    pub weight: Option<Weight>,
    pub cap: u32,
    pub q: Vec<ParamPoly>,
    pub ideal: Vec<HOperator<ParamFraction>>,
    /// Some generator mentions `z`; products were taken in `D̂_n⟨z⟩`.
    pub homogenized: bool,
}

fn syntax(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        col,
        msg: msg.into(),
    }
}

/// Words of a line with their 1-based columns.
fn words(s: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, (b, c)) in s.char_indices().enumerate() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some((i, b)),
            (true, Some((col, from))) => {
                out.push((col + 1, &s[from..b]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some((col, from)) = start {
        out.push((col + 1, &s[from..]));
    }
    out
}

fn parse_order(args: &[(usize, &str)], vars: &[String], line: usize) -> Result<BaseOrder> {
    let (col, name) = args.first().copied().ok_or_else(|| syntax(line, 1, "missing order name"))?;
    if name != "antigraded_lex" {
        return Err(syntax(line, col, format!("unknown order `{}`", name)));
    }
    let mut priority = Vec::new();
    if let Some(&(col, chain)) = args.get(1) {
        let mut offset = 0;
        for part in chain.split('>') {
            let i = vars.iter().position(|v| v == part).ok_or_else(|| Error::UnknownName {
                name: part.to_string(),
                line,
                col: col + offset,
            })?;
            if priority.contains(&i) {
                return Err(syntax(line, col + offset, format!("`{}` repeated", part)));
            }
            priority.push(i);
            offset += part.chars().count() + 1;
        }
    }
    for i in 0..vars.len() {
        if !priority.contains(&i) {
            priority.push(i);
        }
    }
    Ok(BaseOrder::AntiGradedLex { priority })
}

pub fn parse_problem(text: &str) -> Result<ProblemFile> {
    let mut names = Names::default();
    let mut order_line: Option<(usize, Vec<(usize, String)>)> = None;
    let mut weight_line: Option<(usize, Vec<(usize, String)>)> = None;
    let mut cap = DEFAULT_CAP;
    let mut q_lines = Vec::new();
    let mut ideal_lines = Vec::new();
    let mut seen_vars = false;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("");
        let ws = words(body);
        let Some(&(kcol, key)) = ws.first() else {
            continue;
        };
        let rest_col = ws.get(1).map_or(kcol + key.chars().count(), |w| w.0);
        let rest: String = body.chars().skip(rest_col - 1).collect();
        let args: Vec<(usize, String)> = ws[1..].iter().map(|(c, w)| (*c, w.to_string())).collect();
        match key {
            "params" | "vars" => {
                for (col, w) in &args {
                    let ok = w.chars().next().is_some_and(|c| c.is_alphabetic())
                        && w.chars().all(|c| c.is_alphanumeric() || c == '_');
                    let taken = names.params.contains(w)
                        || names.vars.contains(w)
                        || w == "z"
                        || names.vars.iter().any(|v| *w == format!("d{}", v))
                        || (key == "vars" && names.params.iter().any(|p| *p == format!("d{}", w)));
                    if !ok || taken {
                        return Err(syntax(line, *col, format!("invalid or repeated name `{}`", w)));
                    }
                    if key == "params" {
                        names.params.push(w.clone());
                    } else {
                        names.vars.push(w.clone());
                    }
                }
                seen_vars |= key == "vars";
            }
            "order" => order_line = Some((line, args)),
            "weight" => weight_line = Some((line, args)),
            "cap" => {
                let (col, w) = args.first().ok_or_else(|| syntax(line, rest_col, "missing cap"))?;
                cap = w
                    .parse::<u32>()
                    .ok()
                    .filter(|&c| c >= 1 && args.len() == 1)
                    .ok_or_else(|| syntax(line, *col, "cap must be a single positive integer"))?;
            }
            "q" => q_lines.push((line, rest_col, rest)),
            "ideal" => ideal_lines.push((line, rest_col, rest)),
            other => return Err(syntax(line, kcol, format!("unknown key `{}`", other))),
        }
    }
    if !seen_vars || names.vars.is_empty() {
        return Err(syntax(1, 1, "missing `vars` line"));
    }
    let n = names.vars.len();
    let order = match &order_line {
        Some((line, args)) => {
            let a: Vec<(usize, &str)> = args.iter().map(|(c, w)| (*c, w.as_str())).collect();
            parse_order(&a, &names.vars, *line)?
        }
        None => BaseOrder::antigraded_lex(n),
    };
    let weight = match &weight_line {
        Some((line, args)) => {
            if args.len() != 2 * n {
                return Err(syntax(*line, 1, format!("weight needs {} entries", 2 * n)));
            }
            let flat = args
                .iter()
                .map(|(c, w)| parse_rational(w).ok_or_else(|| syntax(*line, *c, "expected a rational")))
                .collect::<Result<Vec<_>>>()?;
            let w = Weight::from_flat(&flat);
            w.check_admissible()?;
            Some(w)
        }
        None => None,
    };
    let q = q_lines
        .iter()
        .map(|(line, col, t)| parse_param_poly(t, &names.params, *line, *col))
        .collect::<Result<Vec<_>>>()?;
    let homogenized = ideal_lines.iter().any(|(_, _, t)| mentions_z(t));
    let ideal = ideal_lines
        .iter()
        .map(|(line, col, t)| parse_operator(t, &names, homogenized, *line, *col))
        .collect::<Result<Vec<_>>>()?;
    if ideal.is_empty() {
        return Err(syntax(text.lines().count().max(1), 1, "missing `ideal` line"));
    }
    Ok(ProblemFile {
        names,
        order,
        weight,
        cap,
        q,
        ideal,
        homogenized,
    })
}

impl ProblemFile {
    pub fn n(&self) -> usize {
        self.names.vars.len()
    }

    pub fn m(&self) -> usize {
        self.names.params.len()
    }

    pub fn q_ideal(&self) -> ParamIdeal {
        if self.q.is_empty() {
            ParamIdeal::zero()
        } else {
            ParamIdeal::new(self.q.clone(), true)
        }
    }

    /// The order used by `div`, `sb`, `reduce` and `gensb`.
    pub fn order_spec(&self) -> OrderSpec {
        OrderSpec::new(self.order.clone(), self.weight.iter().cloned().collect(), self.homogenized)
    }

    pub fn serialize(&self) -> String {
        let mut out = String::new();
        if !self.names.params.is_empty() {
            out.push_str(&format!("params {}\n", self.names.params.join(" ")));
        }
        out.push_str(&format!("vars {}\n", self.names.vars.join(" ")));
        let chain: Vec<&str> = self.order.priority().iter().map(|&i| self.names.vars[i].as_str()).collect();
        out.push_str(&format!("order {} {}\n", self.order.name(), chain.join(">")));
        if let Some(w) = &self.weight {
            let flat: Vec<String> = w.flat().iter().map(|c| c.to_string()).collect();
            out.push_str(&format!("weight {}\n", flat.join(" ")));
        }
        out.push_str(&format!("cap {}\n", self.cap));
        for p in &self.q {
            out.push_str(&format!("q {}\n", p.fmt_with(&self.names.params)));
        }
        for g in &self.ideal {
            let mut text = g.render(&self.names.vars, &self.names.params, None);
            if self.homogenized && !g.support().any(|e| e.k > 0) {
                // keep the product mode on re-parse
                text = format!("{} + 0*z", text);
            }
            out.push_str(&format!("ideal {}\n", text));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SERIES: &str = "# series example\nparams y\nvars x1 x2\norder antigraded_lex x2>x1\ncap 5\nideal y*x2 - x1*x2 + x1\n";

    #[test]
    fn series_file() {
        let p = parse_problem(SERIES).unwrap();
        assert_eq!(p.n(), 2);
        assert_eq!(p.m(), 1);
        assert_eq!(p.order, BaseOrder::AntiGradedLex { priority: vec![1, 0] });
        assert_eq!(p.cap, 5);
        assert!(!p.homogenized);
        assert_eq!(parse_problem(&p.serialize()).unwrap(), p);
    }

    #[test]
    fn minimal_file() {
        let p = parse_problem("vars x1\nideal dx1\n").unwrap();
        assert_eq!((p.n(), p.m()), (1, 0));
        assert_eq!(p.cap, DEFAULT_CAP);
    }

    #[test]
    fn undeclared_name() {
        let e = parse_problem("vars x1 x2\nideal x1 + x3\n").unwrap_err();
        assert_eq!(
            e,
            Error::UnknownName {
                name: "x3".into(),
                line: 2,
                col: 12
            }
        );
    }

    #[test]
    fn bad_lines() {
        assert!(matches!(parse_problem("vars x\nfoo 1\n"), Err(Error::Syntax { line: 2, col: 1, .. })));
        assert!(matches!(parse_problem("vars x\ncap 0\nideal x\n"), Err(Error::Syntax { line: 2, col: 5, .. })));
        assert!(matches!(parse_problem("vars x x\nideal x\n"), Err(Error::Syntax { line: 1, col: 8, .. })));
        assert!(parse_problem("vars x\n").is_err());
    }

    #[test]
    fn homogenized_round_trip() {
        let p = parse_problem("vars x\nweight -1 2\nideal dx^2 + x*z^2\nideal dx*x\n").unwrap();
        assert!(p.homogenized);
        assert_eq!(parse_problem(&p.serialize()).unwrap(), p);
    }
}
