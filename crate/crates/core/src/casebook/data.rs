use std::path::PathBuf;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::symbol::GenusSymbol;

use super::weights::DiagonalAction;

pub const DATA_ENV: &str = "LATTICELAB_DATA";

const HM15: &str = include_str!("../../data/hm15.json");
const K3MAX11: &str = include_str!("../../data/k3max11.json");
const FU_CASES: &str = include_str!("../../data/fu_cases.json");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TableId {
    Hm15,
    K3Max11,
}

impl TableId {
    pub fn name(self) -> &'static str {
        match self {
            TableId::Hm15 => "HM15",
            TableId::K3Max11 => "K3MAX11",
        }
    }

    fn file(self) -> &'static str {
        match self {
            TableId::Hm15 => "hm15.json",
            TableId::K3Max11 => "k3max11.json",
        }
    }

    fn bundled(self) -> &'static str {
        match self {
            TableId::Hm15 => HM15,
            TableId::K3Max11 => K3MAX11,
        }
    }
}

impl std::str::FromStr for TableId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "HM15" => Ok(TableId::Hm15),
            "K3MAX11" => Ok(TableId::K3Max11),
            _ => Err(Error::InvalidInput(format!("unknown table {s:?}"))),
        }
    }
}

/// One row of a Leech pair table: the group and the discriminant form of its fixed lattice K.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeechPairRecord {
    pub table: TableId,
    pub row: u32,
    pub group: String,
    pub order: u64,
    pub rank_k: usize,
    pub q_k: GenusSymbol,
    pub aut_qs_surjective: Option<bool>,
}

impl LeechPairRecord {
    pub fn rank_s(&self) -> usize {
        24 - self.rank_k
    }

    /// q_S = -q_K, since S and K are orthogonal complements in a unimodular lattice.
    pub fn q_s(&self) -> crate::FiniteQuadraticForm {
        self.q_k.to_form().negate()
    }
}

#[derive(Deserialize)]
struct RawTable {
    table: String,
    version: u32,
    rows: Vec<RawRow>,
}

#[derive(Deserialize)]
struct RawRow {
    row: u32,
    group: String,
    order: u64,
    #[serde(rename = "rank_K")]
    rank_k: usize,
    #[serde(rename = "qK")]
    q_k: String,
    #[serde(default, rename = "aut_qS_surjective")]
    aut_qs_surjective: Option<bool>,
}

fn read_data(file: &str, bundled: &'static str) -> Result<String> {
    match std::env::var_os(DATA_ENV) {
        Some(dir) => {
            let path = PathBuf::from(dir).join(file);
            std::fs::read_to_string(&path).map_err(|_| Error::DataFileMissing(path.display().to_string()))
        }
        None => Ok(bundled.to_string()),
    }
}

fn bad(file: &str, msg: impl std::fmt::Display) -> Error {
    Error::DataFormat(format!("{file}: {msg}"))
}

pub fn load_table(table: TableId) -> Result<Vec<LeechPairRecord>> {
    let text = read_data(table.file(), table.bundled())?;
    parse_table(table, &text)
}

pub fn parse_table(table: TableId, text: &str) -> Result<Vec<LeechPairRecord>> {
    let file = table.file();
    let raw: RawTable = serde_json::from_str(text).map_err(|e| bad(file, e))?;
    if raw.table != table.name() {
        return Err(bad(file, format!("expected table {}, found {}", table.name(), raw.table)));
    }
    if raw.version != 1 {
        return Err(bad(file, format!("unsupported version {}", raw.version)));
    }
    raw.rows
        .into_iter()
        .map(|r| {
            if r.rank_k > 24 {
                return Err(bad(file, format!("row {}: rank_K {} exceeds 24", r.row, r.rank_k)));
            }
            let q_k = GenusSymbol::parse(&r.q_k)
                .map_err(|e| bad(file, format!("row {}: {e}", r.row)))?;
            Ok(LeechPairRecord {
                table,
                row: r.row,
                group: r.group,
                order: r.order,
                rank_k: r.rank_k,
                q_k,
                aut_qs_surjective: r.aut_qs_surjective,
            })
        })
        .collect()
}

pub fn record(table: TableId, row: u32) -> Result<LeechPairRecord> {
    load_table(table)?
        .into_iter()
        .find(|r| r.row == row)
        .ok_or_else(|| Error::InvalidInput(format!("{} has no row {row}", table.name())))
}

/// A bundled normal-form family: a diagonal group action on cubic fourfolds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FuCase {
    pub id: String,
    pub generators: Vec<DiagonalAction>,
    pub expected_dim: usize,
    /// Monomials of a representative cubic; `None` means every monomial in the weight class.
    pub monomials: Option<Vec<[u8; 6]>>,
}

#[derive(Deserialize)]
struct RawFu {
    version: u32,
    cases: Vec<RawCase>,
}

#[derive(Deserialize)]
struct RawCase {
    id: String,
    generators: Vec<RawGen>,
    expected_dim: usize,
    monomials: Option<Vec<[u8; 6]>>,
}

#[derive(Deserialize)]
struct RawGen {
    order: u32,
    weights: [u32; 6],
    w0: u32,
}

pub fn load_fu_cases() -> Result<Vec<FuCase>> {
    let file = "fu_cases.json";
    let text = read_data(file, FU_CASES)?;
    let raw: RawFu = serde_json::from_str(&text).map_err(|e| bad(file, e))?;
    if raw.version != 1 {
        return Err(bad(file, format!("unsupported version {}", raw.version)));
    }
    raw.cases
        .into_iter()
        .map(|c| {
            let generators = c
                .generators
                .iter()
                .map(|g| DiagonalAction::new(g.order, g.weights, g.w0))
                .collect::<Result<Vec<_>>>()
                .map_err(|e| bad(file, format!("case {}: {e}", c.id)))?;
            if let Some(ms) = &c.monomials {
                if ms.iter().any(|m| m.iter().map(|&e| e as u32).sum::<u32>() != 3) {
                    return Err(bad(file, format!("case {}: monomials must be cubic", c.id)));
                }
            }
            Ok(FuCase {
                id: c.id,
                generators,
                expected_dim: c.expected_dim,
                monomials: c.monomials,
            })
        })
        .collect()
}
