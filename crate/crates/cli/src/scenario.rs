//! Scenario files.
//!
//! ```text
//! graph1 team1.graph        # paths are relative to the scenario file
//! graph2 team2.graph
//! op bridge                 # or `interface`
//! pair 1 0                  # (vertex of graph 1, vertex of graph 2)
//! x0 3 1 2 -1 2 -1 -2 2 -1 1
//! dt 0.05
//! horizon 40
//! method rk4                # or `euler`
//! output runs/example2
//! ```
//!
//! Every `x0` line is a separate initial condition for the combined graph.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use glueconn::format::{self, parse_f64, parse_usize, tokenize, Token};
use glueconn::{
    bridge_glue, interface_glue, BridgeSpec, Error, GlueResult, Graph, Indexing, InterfaceSpec,
    Method, Result,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    Bridge,
    Interface,
}

impl Op {
    pub fn as_str(self) -> &'static str {
        match self {
            Op::Bridge => "bridge",
            Op::Interface => "interface",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub graph1: PathBuf,
    pub graph2: PathBuf,
    pub op: Op,
    /// Pairs as 0-based `(graph 1 vertex, graph 2 vertex)`.
    pub pairs: Vec<(usize, usize)>,
    pub x0: Vec<Vec<f64>>,
    pub dt: Option<f64>,
    pub horizon: Option<f64>,
    pub method: Option<Method>,
    pub output: Option<PathBuf>,
    /// Number of lines in the file, for diagnostics about missing records.
    pub line_count: usize,
}

fn single<'a>(tokens: &'a [Token<'a>], line: usize, what: &str) -> Result<&'a Token<'a>> {
    match tokens {
        [_, value] => Ok(value),
        [kw] => Err(Error::parse(line, kw.column + kw.text.len(), format!("`{}` needs {what}", kw.text))),
        [_, _, extra, ..] => Err(Error::parse(line, extra.column, format!("unexpected `{}`", extra.text))),
        [] => unreachable!("blank lines are skipped"),
    }
}

fn set_once<T>(slot: &mut Option<(T, usize)>, value: T, line: usize, column: usize, key: &str) -> Result<()> {
    if let Some((_, first)) = slot {
        return Err(Error::parse(line, column, format!("`{key}` already given on line {first}")));
    }
    *slot = Some((value, line));
    Ok(())
}

fn label(tok: &Token<'_>, line: usize, indexing: Indexing) -> Result<usize> {
    let value = parse_usize(tok, line, "vertex")?;
    indexing
        .to_internal(value)
        .ok_or_else(|| Error::parse(line, tok.column, "vertex labels start at 1 with --one-indexed"))
}

impl Scenario {
    /// Parses scenario text; relative paths resolve against `base`.
    pub fn parse(text: &str, base: &Path, indexing: Indexing) -> Result<Scenario> {
        let mut graph1 = None;
        let mut graph2 = None;
        let mut op = None;
        let mut dt = None;
        let mut horizon = None;
        let mut method = None;
        let mut output = None;
        let mut pairs = Vec::new();
        let mut x0 = Vec::new();
        let mut line_count = 0;

        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            line_count = line;
            let tokens = tokenize(raw);
            let Some(key) = tokens.first() else {
                continue;
            };
            match key.text {
                "graph1" | "graph2" | "output" => {
                    let value = single(&tokens, line, "a path")?;
                    let path = base.join(value.text);
                    let slot = match key.text {
                        "graph1" => &mut graph1,
                        "graph2" => &mut graph2,
                        _ => &mut output,
                    };
                    set_once(slot, path, line, key.column, key.text)?;
                }
                "op" => {
                    let value = single(&tokens, line, "`bridge` or `interface`")?;
                    let parsed = match value.text {
                        "bridge" => Op::Bridge,
                        "interface" => Op::Interface,
                        other => {
                            return Err(Error::parse(
                                line,
                                value.column,
                                format!("unknown operation `{other}`, expected `bridge` or `interface`"),
                            ))
                        }
                    };
                    set_once(&mut op, parsed, line, key.column, "op")?;
                }
                "pair" => {
                    if tokens.len() != 3 {
                        let column = tokens.get(3).map_or(key.column, |t| t.column);
                        return Err(Error::parse(line, column, "expected `pair <u> <v>`"));
                    }
                    pairs.push((label(&tokens[1], line, indexing)?, label(&tokens[2], line, indexing)?));
                }
                "x0" => {
                    if tokens.len() < 2 {
                        return Err(Error::parse(line, key.column, "`x0` needs at least one value"));
                    }
                    let values = tokens[1..]
                        .iter()
                        .map(|t| parse_f64(t, line, "initial state"))
                        .collect::<Result<Vec<_>>>()?;
                    x0.push(values);
                }
                "dt" | "horizon" => {
                    let value = single(&tokens, line, "a positive real")?;
                    let x = parse_f64(value, line, key.text)?;
                    if x <= 0.0 {
                        return Err(Error::parse(line, value.column, format!("`{}` must be positive", key.text)));
                    }
                    let slot = if key.text == "dt" { &mut dt } else { &mut horizon };
                    set_once(slot, x, line, key.column, key.text)?;
                }
                "method" => {
                    let value = single(&tokens, line, "`euler` or `rk4`")?;
                    let parsed = Method::from_str(value.text).map_err(|_| {
                        Error::parse(line, value.column, format!("unknown method `{}`, expected `euler` or `rk4`", value.text))
                    })?;
                    set_once(&mut method, parsed, line, key.column, "method")?;
                }
                other => {
                    return Err(Error::parse(line, key.column, format!("unknown record `{other}`")));
                }
            }
        }

        let end = line_count.max(1);
        let missing = |what: &str| Error::parse(end, 1, format!("missing `{what}` line"));
        Ok(Scenario {
            graph1: graph1.ok_or_else(|| missing("graph1"))?.0,
            graph2: graph2.ok_or_else(|| missing("graph2"))?.0,
            op: op.ok_or_else(|| missing("op"))?.0,
            pairs,
            x0,
            dt: dt.map(|v| v.0),
            horizon: horizon.map(|v| v.0),
            method: method.map(|v| v.0),
            output: output.map(|v| v.0),
            line_count,
        })
    }
}

/// Where an error came from, for diagnostics.
#[derive(Debug)]
pub struct Located {
    pub path: Option<PathBuf>,
    pub error: Error,
}

impl Located {
    pub fn at(path: &Path) -> impl FnOnce(Error) -> Located + '_ {
        move |error| Located {
            path: Some(path.to_path_buf()),
            error,
        }
    }
}

impl From<Error> for Located {
    fn from(error: Error) -> Self {
        Located { path: None, error }
    }
}

impl std::fmt::Display for Located {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.path {
            Some(p) => write!(f, "{}: {}", p.display(), self.error),
            None => write!(f, "{}", self.error),
        }
    }
}

/// A scenario with both graphs read from disk.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub path: PathBuf,
    pub scenario: Scenario,
    pub g1: Graph,
    pub g2: Graph,
}

impl Loaded {
    pub fn read(path: &Path, indexing: Indexing) -> std::result::Result<Loaded, Located> {
        let text = format::read_to_string(path).map_err(Located::at(path))?;
        let base = path.parent().unwrap_or(Path::new(""));
        let scenario = Scenario::parse(&text, base, indexing).map_err(Located::at(path))?;
        let g1 = format::read_graph_file(&scenario.graph1, indexing).map_err(Located::at(&scenario.graph1))?;
        let g2 = format::read_graph_file(&scenario.graph2, indexing).map_err(Located::at(&scenario.graph2))?;
        Ok(Loaded {
            path: path.to_path_buf(),
            scenario,
            g1,
            g2,
        })
    }

    pub fn glue(&self, relaxed: bool) -> std::result::Result<GlueResult, Located> {
        let pairs = self.scenario.pairs.clone();
        let result = match self.scenario.op {
            Op::Bridge => {
                let spec = if relaxed {
                    BridgeSpec::relaxed(pairs)
                } else {
                    BridgeSpec::new(pairs)
                };
                spec.and_then(|s| bridge_glue(&self.g1, &self.g2, &s))
            }
            Op::Interface => self.interface_spec().and_then(|s| interface_glue(&self.g1, &self.g2, &s)),
        };
        result.map_err(Located::at(&self.path))
    }

    pub fn interface_spec(&self) -> Result<InterfaceSpec> {
        InterfaceSpec::from_pairs(&self.scenario.pairs)
    }

    /// File stem of the scenario, used to name default outputs.
    pub fn stem(&self) -> String {
        self.path
            .file_stem()
            .map_or_else(|| "scenario".to_string(), |s| s.to_string_lossy().into_owned())
    }
}
