use crate::algebra::LieAlgebra;
use crate::error::{LieError, ParseError};
use crate::rational::{parse_q, Q};
use crate::split::SplitData;
use std::collections::BTreeMap;
use std::sync::Arc;

/// Contents of an algebra file: the algebra plus the optional split data.
#[derive(Clone, Debug)]
pub struct AlgebraFile {
    pub algebra: LieAlgebra,
    /// Number of leading basis vectors spanning `h`, if declared.
    pub t: Option<usize>,
    pub lambda: Option<Vec<Q>>,
}

impl AlgebraFile {
    /// Builds the split. Missing `h` means `t = 0`; missing `lambda` means zero.
    pub fn split(&self) -> Result<SplitData, LieError> {
        let t = self.t.unwrap_or(0);
        let lambda = self
            .lambda
            .clone()
            .unwrap_or_else(|| vec![Q::from_integer(0.into()); t]);
        SplitData::new(Arc::new(self.algebra.clone()), t, lambda)
    }
}

fn syntax(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, msg: msg.into() }
}

fn structural(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Structural { line, msg: msg.into() }
}

fn numeric(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Numeric { line, msg: msg.into() }
}

/// Resolves a basis reference: a declared name, or a 1-based index.
fn resolve(labels: &[String], tok: &str, line: usize) -> Result<usize, ParseError> {
    if let Some(i) = labels.iter().position(|l| l == tok) {
        return Ok(i);
    }
    if let Ok(k) = tok.parse::<usize>() {
        if k >= 1 && k <= labels.len() {
            return Ok(k - 1);
        }
        return Err(structural(
            line,
            format!("basis index {k} out of range 1..{}", labels.len()),
        ));
    }
    Err(structural(line, format!("unknown basis element '{tok}'")))
}

/// Parses the line-oriented algebra format. Jacobi is not checked here.
pub fn parse_algebra(text: &str) -> Result<AlgebraFile, ParseError> {
    let mut dim: Option<usize> = None;
    let mut labels: Option<Vec<String>> = None;
    let mut t: Option<(usize, usize)> = None;
    let mut lambda: Option<(usize, Vec<Q>)> = None;
    // (i, j) with i < j -> (line, sparse rhs normalized to [e_i, e_j])
    let mut declared: BTreeMap<(usize, usize), (usize, BTreeMap<usize, Q>)> = BTreeMap::new();

    for (ln0, raw) in text.lines().enumerate() {
        let line = ln0 + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let toks: Vec<&str> = content.split_whitespace().collect();
        match toks[0] {
            "dim" => {
                if dim.is_some() {
                    return Err(syntax(line, "duplicate 'dim'"));
                }
                if toks.len() != 2 {
                    return Err(syntax(line, "expected 'dim <n>'"));
                }
                let n: usize = toks[1]
                    .parse()
                    .map_err(|_| syntax(line, format!("invalid dimension '{}'", toks[1])))?;
                if n == 0 {
                    return Err(structural(line, "dimension must be positive"));
                }
                dim = Some(n);
            }
            "basis" => {
                let n = dim.ok_or_else(|| syntax(line, "'basis' before 'dim'"))?;
                if labels.is_some() {
                    return Err(syntax(line, "duplicate 'basis'"));
                }
                if !declared.is_empty() {
                    return Err(syntax(line, "'basis' after 'bracket'"));
                }
                let names: Vec<String> = toks[1..].iter().map(|s| s.to_string()).collect();
                if names.len() != n {
                    return Err(structural(
                        line,
                        format!("basis lists {} names, dim is {n}", names.len()),
                    ));
                }
                for (a, name) in names.iter().enumerate() {
                    if name.parse::<usize>().is_ok() || name == "=" {
                        return Err(syntax(line, format!("invalid basis name '{name}'")));
                    }
                    if names[..a].contains(name) {
                        return Err(structural(line, format!("duplicate basis name '{name}'")));
                    }
                }
                labels = Some(names);
            }
            "h" => {
                if t.is_some() {
                    return Err(syntax(line, "duplicate 'h'"));
                }
                if toks.len() != 2 {
                    return Err(syntax(line, "expected 'h <t>'"));
                }
                let v: usize = toks[1]
                    .parse()
                    .map_err(|_| syntax(line, format!("invalid subalgebra size '{}'", toks[1])))?;
                t = Some((line, v));
            }
            "lambda" => {
                if lambda.is_some() {
                    return Err(syntax(line, "duplicate 'lambda'"));
                }
                let mut vals = Vec::new();
                for tok in &toks[1..] {
                    vals.push(
                        parse_q(tok)
                            .ok_or_else(|| numeric(line, format!("not a rational: '{tok}'")))?,
                    );
                }
                lambda = Some((line, vals));
            }
            "bracket" => {
                let n = dim.ok_or_else(|| syntax(line, "'bracket' before 'dim'"))?;
                let labels = labels.get_or_insert_with(|| (1..=n).map(|i| format!("e{i}")).collect());
                if toks.len() < 5 || toks[3] != "=" {
                    return Err(syntax(line, "expected 'bracket A B = c1 X1 c2 X2 ...'"));
                }
                let i = resolve(labels, toks[1], line)?;
                let j = resolve(labels, toks[2], line)?;
                let rhs = &toks[4..];
                let mut terms: BTreeMap<usize, Q> = BTreeMap::new();
                if !(rhs.len() == 1 && rhs[0] == "0") {
                    if !rhs.len().is_multiple_of(2) {
                        return Err(syntax(line, "right-hand side must be 'coeff name' pairs"));
                    }
                    for pair in rhs.chunks(2) {
                        let c = parse_q(pair[0])
                            .ok_or_else(|| numeric(line, format!("not a rational: '{}'", pair[0])))?;
                        let k = resolve(labels, pair[1], line)?;
                        *terms.entry(k).or_insert_with(|| Q::from_integer(0.into())) += c;
                    }
                }
                terms.retain(|_, c| *c != Q::from_integer(0.into()));
                if i == j {
                    if !terms.is_empty() {
                        return Err(structural(line, "[A,A] must vanish"));
                    }
                    continue;
                }
                let (key, norm) = if i < j {
                    ((i, j), terms)
                } else {
                    ((j, i), terms.into_iter().map(|(k, c)| (k, -c)).collect())
                };
                if let Some((prev, old)) = declared.get(&key) {
                    if *old != norm {
                        return Err(structural(
                            line,
                            format!(
                                "bracket [{},{}] conflicts with the declaration on line {prev}",
                                labels[key.0], labels[key.1]
                            ),
                        ));
                    }
                    continue;
                }
                declared.insert(key, (line, norm));
            }
            other => return Err(syntax(line, format!("unknown directive '{other}'"))),
        }
    }

    let n = dim.ok_or_else(|| syntax(text.lines().count().max(1), "missing 'dim'"))?;
    let labels = labels.unwrap_or_else(|| (1..=n).map(|i| format!("e{i}")).collect());
    let mut algebra = LieAlgebra::abelian(labels);
    for ((i, j), (line, terms)) in declared {
        let rhs: Vec<(usize, Q)> = terms.into_iter().collect();
        algebra
            .set_bracket(i, j, &rhs)
            .map_err(|e| structural(line, e.to_string()))?;
    }
    if let Some((line, tv)) = t {
        if tv > n {
            return Err(structural(line, format!("h has size {tv} but dim is {n}")));
        }
    }
    if let Some((line, vals)) = &lambda {
        let tv = t.map(|x| x.1).unwrap_or(0);
        if vals.len() != tv {
            return Err(structural(
                *line,
                format!("lambda has {} entries, h has size {tv}", vals.len()),
            ));
        }
    }
    Ok(AlgebraFile {
        algebra,
        t: t.map(|x| x.1),
        lambda: lambda.map(|x| x.1),
    })
}
