//! Theory configuration files.
//!
//! ```text
//! group 2 2             # A = Z2 × Z2
//! generators e m        # optional, default g1 g2 ...
//! q e 0
//! q m 0
//! q e+m 1/2             # also `q em 1/2` when generator names are single letters
//! ```
//!
//! Matrix form: `qdiag 1/4 0` gives q on all generators and `bil i j p/q`
//! (1-based generator indices or names) gives b(eᵢ, eⱼ). q on a sum of two
//! distinct generators determines their b; q on any other element is checked
//! against the resulting form.

use std::path::Path;

use num_rational::Rational64;

use super::{builtin, AbelianTheory, TheoryError};

fn perr(line: usize, message: impl Into<String>) -> TheoryError {
    TheoryError::Parse {
        line,
        message: message.into(),
    }
}

fn parse_rational(line: usize, tok: &str) -> Result<Rational64, TheoryError> {
    let bad = || perr(line, format!("expected a rational p/q, found `{tok}`"));
    match tok.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.parse().map_err(|_| bad())?;
            let d: i64 = d.parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(Rational64::new(n, d))
        }
        None => tok.parse::<i64>().map(Rational64::from).map_err(|_| bad()),
    }
}

/// Parses an element expression into integer coordinates.
fn parse_element(line: usize, tok: &str, names: &[String]) -> Result<Vec<i64>, TheoryError> {
    let r = names.len();
    let bad = |msg: String| perr(line, msg);
    if tok.contains(',') || (r == 1 && tok.parse::<i64>().is_ok()) {
        let coords: Vec<i64> = tok
            .split(',')
            .map(|s| s.trim().parse::<i64>())
            .collect::<Result<_, _>>()
            .map_err(|_| bad(format!("malformed element tuple `{tok}`")))?;
        if coords.len() != r {
            return Err(bad(format!(
                "element `{tok}` has {} coordinates, group has {r}",
                coords.len()
            )));
        }
        return Ok(coords);
    }
    let mut coords = vec![0i64; r];
    let terms: Vec<&str> = tok.split('+').collect();
    let single_letters = names.iter().all(|n| n.chars().count() == 1);
    for term in terms {
        let (k, name) = match term.split_once('*') {
            Some((k, name)) => (
                k.parse::<i64>()
                    .map_err(|_| bad(format!("bad multiplier in `{term}`")))?,
                name,
            ),
            None => (1, term),
        };
        if let Some(i) = names.iter().position(|n| n == name) {
            coords[i] += k;
        } else if single_letters && !name.is_empty() {
            for ch in name.chars() {
                let i = names
                    .iter()
                    .position(|n| n.starts_with(ch))
                    .ok_or_else(|| bad(format!("unknown generator `{ch}` in `{tok}`")))?;
                coords[i] += k;
            }
        } else {
            return Err(bad(format!("unknown generator `{name}`")));
        }
    }
    Ok(coords)
}

fn generator_index(line: usize, tok: &str, names: &[String]) -> Result<usize, TheoryError> {
    if let Some(i) = names.iter().position(|n| n == tok) {
        return Ok(i);
    }
    match tok.parse::<usize>() {
        Ok(i) if i >= 1 && i <= names.len() => Ok(i - 1),
        _ => Err(perr(line, format!("unknown generator `{tok}`"))),
    }
}

pub fn parse_theory(text: &str, name: &str) -> Result<AbelianTheory, TheoryError> {
    let mut orders: Option<Vec<u64>> = None;
    let mut names: Option<Vec<String>> = None;
    let mut q_lines: Vec<(usize, String, Rational64)> = Vec::new();
    let mut qdiag: Option<(usize, Vec<Rational64>)> = None;
    let mut bil: Vec<(usize, String, String, Rational64)> = Vec::new();
    let mut last_line = 0;

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let toks: Vec<&str> = raw.split('#').next().unwrap_or("").split_whitespace().collect();
        match toks.as_slice() {
            [] => {}
            ["group", ns @ ..] if !ns.is_empty() => {
                if orders.is_some() {
                    return Err(perr(line, "group declared twice"));
                }
                let ns: Vec<u64> = ns
                    .iter()
                    .map(|t| t.parse::<u64>().ok().filter(|&n| n >= 1))
                    .collect::<Option<_>>()
                    .ok_or_else(|| perr(line, "cyclic orders must be positive integers"))?;
                orders = Some(ns);
            }
            ["generators", gs @ ..] if !gs.is_empty() => {
                if gs
                    .iter()
                    .any(|g| g.parse::<i64>().is_ok() || g.contains(['+', '*', ',']))
                {
                    return Err(perr(line, "generator names must not be numbers or contain + * ,"));
                }
                names = Some(gs.iter().map(|s| s.to_string()).collect());
            }
            ["q", elem, v] => q_lines.push((line, elem.to_string(), parse_rational(line, v)?)),
            ["qdiag", vs @ ..] if !vs.is_empty() => {
                let vs = vs.iter().map(|v| parse_rational(line, v)).collect::<Result<_, _>>()?;
                qdiag = Some((line, vs));
            }
            ["bil", a, b, v] => bil.push((line, a.to_string(), b.to_string(), parse_rational(line, v)?)),
            [kw, ..] if ["group", "generators", "q", "qdiag", "bil"].contains(kw) => {
                return Err(perr(line, format!("wrong number of fields for `{kw}`")));
            }
            [kw, ..] => return Err(perr(line, format!("unknown directive `{kw}`"))),
        }
    }

    let orders = orders.ok_or_else(|| perr(last_line.max(1), "missing `group` line"))?;
    let r = orders.len();
    let names = names.unwrap_or_else(|| (1..=r).map(|i| format!("g{i}")).collect());
    if names.len() != r {
        return Err(perr(
            last_line.max(1),
            format!("{} generator names for {r} cyclic factors", names.len()),
        ));
    }

    let mut q_gen: Vec<Option<Rational64>> = vec![None; r];
    let mut b_gen: Vec<Vec<Option<Rational64>>> = vec![vec![None; r]; r];
    let set = |slot: &mut Option<Rational64>, v: Rational64, line: usize, what: String| match slot {
        Some(old) if !(*old - v).is_integer() => Err(perr(line, format!("{what} given twice with different values"))),
        _ => {
            *slot = Some(v);
            Ok(())
        }
    };
    if let Some((line, vs)) = &qdiag {
        if vs.len() != r {
            return Err(perr(
                *line,
                format!("qdiag has {} entries, group has {r} generators", vs.len()),
            ));
        }
        for (i, &v) in vs.iter().enumerate() {
            set(&mut q_gen[i], v, *line, format!("q({})", names[i]))?;
        }
    }
    let mut parsed = Vec::new();
    for (line, elem, v) in &q_lines {
        let coords = parse_element(*line, elem, &names)?;
        let support: Vec<usize> = (0..r).filter(|&i| coords[i] != 0).collect();
        if support.len() == 1 && coords[support[0]] == 1 {
            let i = support[0];
            set(&mut q_gen[i], *v, *line, format!("q({})", names[i]))?;
        } else {
            parsed.push((*line, elem.clone(), coords, *v));
        }
    }
    for (line, a, b, v) in &bil {
        let i = generator_index(*line, a, &names)?;
        let j = generator_index(*line, b, &names)?;
        if i == j {
            return Err(perr(*line, "bil needs two distinct generators; use q for the diagonal"));
        }
        let what = format!("b({}, {})", names[i], names[j]);
        set(&mut b_gen[i][j], *v, *line, what.clone())?;
        set(&mut b_gen[j][i], *v, *line, what)?;
    }
    for i in 0..r {
        if q_gen[i].is_none() {
            return Err(perr(last_line.max(1), format!("q({}) is not given", names[i])));
        }
    }
    // q(eᵢ + eⱼ) fixes b(eᵢ, eⱼ)
    for (line, _, coords, v) in &parsed {
        let support: Vec<usize> = (0..r).filter(|&i| coords[i] != 0).collect();
        if let [i, j] = support[..] {
            if coords[i] == 1 && coords[j] == 1 {
                let b = *v - q_gen[i].unwrap() - q_gen[j].unwrap();
                let what = format!("b({}, {})", names[i], names[j]);
                set(&mut b_gen[i][j], b, *line, what.clone())?;
                set(&mut b_gen[j][i], b, *line, what)?;
            }
        }
    }
    let q: Vec<Rational64> = q_gen.into_iter().map(Option::unwrap).collect();
    let b: Vec<Vec<Rational64>> = b_gen
        .into_iter()
        .map(|row| row.into_iter().map(|v| v.unwrap_or_default()).collect())
        .collect();
    let theory = AbelianTheory::new(name, orders, names, q, b)?;

    let m = theory.modulus() as i64;
    for (line, elem, coords, v) in &parsed {
        let a = theory.index_of(coords);
        let actual = Rational64::new(theory.q(a) as i64, m);
        if !(actual - *v).is_integer() {
            return Err(TheoryError::QuadraticLaw(format!(
                "line {line}: q({elem}) = {v} contradicts the value {actual} forced by the generators"
            )));
        }
    }
    Ok(theory)
}

/// A built-in theory name, or a path to a configuration file.
pub fn resolve_theory(arg: &str) -> Result<AbelianTheory, TheoryError> {
    if let Some(t) = builtin(arg) {
        return Ok(t);
    }
    let path = Path::new(arg);
    let text = std::fs::read_to_string(path).map_err(|e| TheoryError::Io(arg.to_string(), e.to_string()))?;
    let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or(arg);
    parse_theory(&text, name)
}
