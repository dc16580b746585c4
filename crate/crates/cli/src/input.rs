//! Reading polynomial list files and command-line polynomial arguments.
//!
//! A list file holds one polynomial per line. `#` starts a comment, blank
//! lines are ignored, and three optional header lines may appear anywhere:
//!
//! ```text
//! weights: 5,6,9
//! vars: 3
//! action: derive
//! ```

use std::path::Path;

use anyhow::{bail, Context};
use macdual::poly::{parse_poly, Action, Flavor, SparsePoly, Weighting};
use macdual::Error;

/// Polynomials of one flavor together with their ambient grading.
#[derive(Debug)]
pub struct PolyList {
    pub polys: Vec<SparsePoly>,
    pub weighting: Weighting,
    pub action: Option<Action>,
}

/// Parses `5,6,9` into a weight vector.
fn parse_weights(text: &str) -> anyhow::Result<Vec<u64>> {
    text.split(',')
        .map(|w| {
            w.trim()
                .parse::<u64>()
                .with_context(|| format!("invalid weight '{}'", w.trim()))
        })
        .collect()
}

fn header_error(line: usize, column: usize, message: String) -> Error {
    Error::Parse {
        line,
        column,
        message,
    }
}

/// Reads a list file; `weights` from the command line take precedence over
/// the file's header.
pub fn read_poly_list(
    path: &Path,
    flavor: Flavor,
    weights: Option<&[u64]>,
) -> anyhow::Result<PolyList> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    parse_poly_list(&text, flavor, weights).with_context(|| format!("in {}", path.display()))
}

pub fn parse_poly_list(
    text: &str,
    flavor: Flavor,
    weights: Option<&[u64]>,
) -> anyhow::Result<PolyList> {
    let mut header_weights: Option<Vec<u64>> = None;
    let mut vars: Option<usize> = None;
    let mut action = None;
    let mut parsed = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim();
        if trimmed.is_empty() {
            continue;
        }
        let column = content.len() - content.trim_start().len() + 1;
        if let Some((key, value)) = trimmed.split_once(':') {
            let value = value.trim();
            match key.trim() {
                "weights" => {
                    let w = parse_weights(value)
                        .map_err(|e| header_error(line, column, e.to_string()))?;
                    header_weights = Some(w);
                }
                "vars" => {
                    let n = value.parse().map_err(|_| {
                        header_error(line, column, format!("invalid variable count '{value}'"))
                    })?;
                    vars = Some(n);
                }
                "action" => {
                    let a = value
                        .parse::<Action>()
                        .map_err(|e| header_error(line, column, e.to_string()))?;
                    action = Some(a);
                }
                other => {
                    return Err(header_error(line, column, format!("unknown header '{other}'")).into())
                }
            }
            continue;
        }
        let p = parse_poly(content, Some(flavor), None).map_err(|e| e.at_line(line))?;
        parsed.push((line, p));
    }
    let weights: Option<Vec<u64>> = weights.map(<[u64]>::to_vec).or(header_weights);
    let n = match (&weights, vars) {
        (Some(w), Some(v)) if w.len() != v => {
            bail!("{} weights given for {v} variables", w.len())
        }
        (Some(w), _) => w.len(),
        (None, Some(v)) => v,
        (None, None) => parsed.iter().map(|(_, p)| p.nvars()).max().unwrap_or(0),
    };
    let weighting = match weights {
        Some(w) => Weighting::new(w)?,
        None => Weighting::standard(n),
    };
    let polys = parsed
        .into_iter()
        .map(|(line, p)| {
            if p.nvars() > n {
                return Err(header_error(
                    line,
                    1,
                    format!("uses x{}/y{} but only {n} variables are declared", p.nvars(), p.nvars()),
                ));
            }
            Ok(p.with_nvars(n).expect("padding never drops variables"))
        })
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(PolyList {
        polys,
        weighting,
        action,
    })
}

/// Parses a single command-line polynomial into `nvars` variables.
pub fn parse_arg(text: &str, flavor: Flavor, nvars: usize, what: &str) -> anyhow::Result<SparsePoly> {
    parse_poly(text, Some(flavor), Some(nvars))
        .map_err(|e| Error::Parse {
            line: 1,
            column: e.column,
            message: e.message,
        })
        .with_context(|| format!("in {what} '{text}'"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn headers_comments_and_padding() {
        let list = parse_poly_list(
            "# semigroup ring\nweights: 5,6,9\nx1^3 - x2*x3  # first\n\nx2^3-x3^2\n",
            Flavor::Ring,
            None,
        )
        .unwrap();
        assert_eq!(list.polys.len(), 2);
        assert_eq!(list.weighting.weights(), &[5, 6, 9]);
        assert!(list.polys.iter().all(|p| p.nvars() == 3));
    }

    #[test]
    fn command_line_weights_win() {
        let list = parse_poly_list("weights: 1,1\nx1", Flavor::Ring, Some(&[2, 3])).unwrap();
        assert_eq!(list.weighting.weights(), &[2, 3]);
    }

    #[test]
    fn parse_errors_carry_line_and_column() {
        let err = parse_poly_list("x1\n  x2+*x1\n", Flavor::Ring, None).unwrap_err();
        let core = err.downcast_ref::<Error>().unwrap();
        assert_eq!(
            core,
            &Error::Parse {
                line: 2,
                column: 6,
                message: "expected a term".into()
            }
        );
    }

    #[test]
    fn action_header() {
        let list = parse_poly_list("action: derive\ny1^2", Flavor::Dual, None).unwrap();
        assert_eq!(list.action, Some(Action::Derivation));
    }

    #[test]
    fn too_many_variables() {
        assert!(parse_poly_list("vars: 2\nx3", Flavor::Ring, None).is_err());
    }
}
