//! Input sources shared by every subcommand: sequences, weights, and
//! matrices come inline, from a JSON file, or from a named family, all
//! under one `kind:payload` grammar.

use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use fracseq::json::{matrix_from_json, seq_from_json, AnyMatrix, AnySeq};
use fracseq::{make_family, Family, InfMatrix, MatrixFamily, Mode, Scalar, Seq, WeightSeq};

/// `inline:1,1/2,-3` | `file:seq.json` | `family:geometric:1/2`.
#[derive(Debug, Clone)]
pub enum SeqSource {
    Inline(Vec<String>),
    File(String),
    Family(String),
}

impl SeqSource {
    pub fn parse(s: &str) -> Result<Self> {
        let (kind, payload) = s
            .split_once(':')
            .ok_or_else(|| anyhow!("source must look like kind:payload, got {s:?}"))?;
        match kind {
            "inline" => Ok(SeqSource::Inline(
                payload.split(',').map(|t| t.trim().to_string()).collect(),
            )),
            "file" => Ok(SeqSource::File(payload.to_string())),
            "family" => Ok(SeqSource::Family(payload.to_string())),
            other => bail!("unknown source kind {other:?} (want inline, file, or family)"),
        }
    }

    /// Loads the first `n` entries in scalar mode `S`. Inline and family
    /// sources are cut or generated to length `n`; file sources must carry
    /// at least `n` entries and must match the mode.
    pub fn load<S: Scalar>(&self, n: usize, default_seed: u64) -> Result<Seq<S>> {
        match self {
            SeqSource::Inline(items) => {
                let entries: fracseq::Result<Vec<S>> =
                    items.iter().map(|t| S::parse_str(t)).collect();
                let mut entries = entries?;
                if entries.len() < n {
                    bail!("inline sequence has {} entries, need {n}", entries.len());
                }
                entries.truncate(n);
                Ok(Seq::new(entries))
            }
            SeqSource::File(path) => {
                let any = read_seq_file(path)?;
                let seq = take_mode_seq::<S>(any, path)?;
                if seq.len() < n {
                    bail!("{path}: sequence has {} entries, need {n}", seq.len());
                }
                let mut entries = seq.into_entries();
                entries.truncate(n);
                Ok(Seq::new(entries))
            }
            SeqSource::Family(spec) => {
                let family = resolve_seed(Family::parse(spec)?, default_seed);
                Ok(make_family(&family, n))
            }
        }
    }
}

fn resolve_seed(family: Family, default_seed: u64) -> Family {
    match family {
        Family::Random { lo, hi, seed: None } => Family::Random {
            lo,
            hi,
            seed: Some(default_seed),
        },
        other => other,
    }
}

fn read_seq_file(path: &str) -> Result<AnySeq> {
    let text = fs::read_to_string(Path::new(path)).with_context(|| format!("reading {path}"))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).with_context(|| format!("parsing {path}"))?;
    Ok(seq_from_json(&value)?)
}

fn take_mode_seq<S: Scalar>(any: AnySeq, path: &str) -> Result<Seq<S>> {
    let file_mode = any.mode();
    if file_mode != S::MODE {
        bail!(
            "{path}: sequence is in {} mode but the run uses {} mode",
            file_mode.label(),
            S::MODE.label()
        );
    }
    // modes agree, so exactly one downcast applies
    match any {
        AnySeq::Rational(s) => reinterpret_seq(s),
        AnySeq::Float(s) => reinterpret_seq(s),
    }
}

fn reinterpret_seq<A: Scalar, B: Scalar>(s: Seq<A>) -> Result<Seq<B>> {
    let boxed: Box<dyn std::any::Any> = Box::new(s);
    boxed
        .downcast::<Seq<B>>()
        .map(|b| *b)
        .map_err(|_| anyhow!("internal mode dispatch error"))
}

/// Weight sequences use the sequence grammar plus the nonzero check.
pub fn load_weights<S: Scalar>(
    source: &SeqSource,
    n: usize,
    default_seed: u64,
) -> Result<WeightSeq<S>> {
    let seq = source.load::<S>(n, default_seed)?;
    Ok(WeightSeq::new(seq.into_entries())?)
}

/// `family:identity` | `family:cesaro-c1` | `family:zero` | `file:m.json`.
#[derive(Debug, Clone)]
pub enum MatrixSource {
    File(String),
    Family(String),
}

impl MatrixSource {
    pub fn parse(s: &str) -> Result<Self> {
        let (kind, payload) = s
            .split_once(':')
            .ok_or_else(|| anyhow!("matrix source must look like kind:payload, got {s:?}"))?;
        match kind {
            "file" => Ok(MatrixSource::File(payload.to_string())),
            "family" => Ok(MatrixSource::Family(payload.to_string())),
            other => bail!("unknown matrix source kind {other:?} (want file or family)"),
        }
    }

    pub fn load<S: Scalar>(&self, rows: usize, cols: usize) -> Result<InfMatrix<S>> {
        match self {
            MatrixSource::Family(name) => {
                let family = MatrixFamily::parse(name)?;
                Ok(InfMatrix::from_family(family, rows, cols))
            }
            MatrixSource::File(path) => {
                let text = fs::read_to_string(Path::new(path))
                    .with_context(|| format!("reading {path}"))?;
                let value: serde_json::Value =
                    serde_json::from_str(&text).with_context(|| format!("parsing {path}"))?;
                let any = matrix_from_json(&value)?;
                let file_mode = any.mode();
                if file_mode != S::MODE {
                    bail!(
                        "{path}: matrix is in {} mode but the run uses {} mode",
                        file_mode.label(),
                        S::MODE.label()
                    );
                }
                let m = match any {
                    AnyMatrix::Rational(m) => reinterpret_matrix(m)?,
                    AnyMatrix::Float(m) => reinterpret_matrix(m)?,
                };
                Ok(m)
            }
        }
    }
}

fn reinterpret_matrix<A: Scalar, B: Scalar>(m: InfMatrix<A>) -> Result<InfMatrix<B>> {
    let boxed: Box<dyn std::any::Any> = Box::new(m);
    boxed
        .downcast::<InfMatrix<B>>()
        .map(|b| *b)
        .map_err(|_| anyhow!("internal mode dispatch error"))
}

/// Mode resolution: an explicit flag wins; otherwise a decimal point or
/// exponent in the order selects float mode.
pub fn resolve_mode(alpha_text: &str, flag: Option<Mode>) -> Mode {
    if let Some(mode) = flag {
        return mode;
    }
    if alpha_text.contains('.') || alpha_text.contains('e') || alpha_text.contains('E') {
        Mode::Float
    } else {
        Mode::Rational
    }
}
