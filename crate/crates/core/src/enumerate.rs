//! Exhaustive census of small cogs up to isomorphism.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{CogError, Result};
use crate::model::{cog_to_gec, Cog, HalfEdge, PointedGec};
use crate::saturation::saturation_cog;
use crate::transition::transition_recursive;
use crate::yamada::invariant_y;

pub const MAX_CENSUS_EDGES: usize = 4;

/// Set partitions of `0..n` as restricted growth strings.
fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    fn rec(i: usize, n: usize, blocks: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == n {
            out.push(blocks.clone());
            return;
        }
        for b in 0..blocks.len() {
            blocks[b].push(i);
            rec(i + 1, n, blocks, out);
            blocks[b].pop();
        }
        blocks.push(vec![i]);
        rec(i + 1, n, blocks, out);
        blocks.pop();
    }
    let mut out = Vec::new();
    rec(0, n, &mut Vec::new(), &mut out);
    out
}

/// Cyclic orders of a block, with its least element first.
fn arrangements(block: &[usize]) -> Vec<Vec<usize>> {
    let (first, rest) = block.split_first().expect("blocks are non-empty");
    rest.iter()
        .copied()
        .permutations(rest.len())
        .map(|p| std::iter::once(*first).chain(p).collect())
        .collect()
}

/// All cogs with `edges` edges up to isomorphism, as parsed canonical forms,
/// sorted by vertex count and then canonical form.
///
/// Without `no_isolated`, only the connected census is finite, and it gains
/// the single-vertex cog at zero edges.
pub fn enumerate_cogs(edges: usize, connected_only: bool, no_isolated: bool) -> Result<Vec<Cog>> {
    if edges > MAX_CENSUS_EDGES {
        return Err(CogError::TooLarge(format!(
            "census beyond {MAX_CENSUS_EDGES} edges: the half-edge arrangements grow like (2n)!"
        )));
    }
    if !connected_only && !no_isolated {
        return Err(CogError::InvalidArgument(
            "isolated vertices are unbounded unless the census is connected".into(),
        ));
    }
    let labels: Vec<String> = (1..=edges).map(|i| i.to_string()).collect();
    let mut forms: BTreeSet<String> = set_partitions(2 * edges)
        .par_iter()
        .flat_map_iter(|blocks| {
            blocks
                .iter()
                .map(|b| arrangements(b))
                .multi_cartesian_product()
                .map(|vertices| {
                    let vertices = vertices
                        .into_iter()
                        .map(|v| v.into_iter().map(HalfEdge).collect())
                        .collect();
                    Cog::from_half_edges(vertices, labels.clone())
                })
                .filter(|c| !connected_only || c.underlying_graph().num_components() == 1)
                .map(|c| c.canonical_form())
                .collect::<Vec<_>>()
        })
        .collect();
    if edges == 0 {
        forms.clear();
        if !no_isolated {
            forms.insert("()".into());
        } else if !connected_only {
            forms.insert(String::new());
        }
    }
    let mut cogs: Vec<Cog> = forms
        .into_iter()
        .map(|f| Cog::parse(&f).expect("canonical forms parse"))
        .collect();
    cogs.sort_by_cached_key(|c| (c.num_vertices(), c.canonical_form()));
    Ok(cogs)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum CensusInvariant {
    Sat,
    Trans,
    YamadaY,
}

impl FromStr for CensusInvariant {
    type Err = CogError;

    fn from_str(s: &str) -> Result<CensusInvariant> {
        match s {
            "sat" => Ok(CensusInvariant::Sat),
            "trans" => Ok(CensusInvariant::Trans),
            "yamadaY" | "yamada" | "Y" => Ok(CensusInvariant::YamadaY),
            other => Err(CogError::InvalidArgument(format!(
                "unknown invariant '{other}'"
            ))),
        }
    }
}

impl fmt::Display for CensusInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CensusInvariant::Sat => "sat",
            CensusInvariant::Trans => "trans",
            CensusInvariant::YamadaY => "yamadaY",
        })
    }
}

pub fn evaluate_invariant(c: &Cog, invariant: CensusInvariant) -> Result<String> {
    Ok(match invariant {
        CensusInvariant::Sat => saturation_cog(c).to_string(),
        CensusInvariant::Trans => {
            transition_recursive(&PointedGec::from(cog_to_gec(c)), None)?.to_string()
        }
        CensusInvariant::YamadaY => invariant_y(c, 1, 0)?.to_string(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub cog: String,
    pub vertices: usize,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub edges: usize,
    pub invariant: CensusInvariant,
    pub rows: Vec<CensusRow>,
    /// Row indices sharing a value, for values held by more than one row.
    pub collisions: Vec<Vec<usize>>,
}

/// The connected census with one invariant value per isomorphism class.
pub fn census_report(edges: usize, invariant: CensusInvariant) -> Result<CensusReport> {
    let cogs = enumerate_cogs(edges, true, true)?;
    let rows = cogs
        .par_iter()
        .map(|c| {
            Ok(CensusRow {
                cog: c.to_string(),
                vertices: c.num_vertices(),
                value: evaluate_invariant(c, invariant)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut by_value: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    for (i, r) in rows.iter().enumerate() {
        by_value.entry(&r.value).or_default().push(i);
    }
    let collisions = by_value.into_values().filter(|v| v.len() > 1).collect();
    Ok(CensusReport {
        edges,
        invariant,
        rows,
        collisions,
    })
}

impl fmt::Display for CensusReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.rows.iter().map(|r| r.cog.len()).max().unwrap_or(0);
        for r in &self.rows {
            writeln!(f, "{:width$}  {}", r.cog, r.value)?;
        }
        for group in &self.collisions {
            let names: Vec<&str> = group.iter().map(|&i| self.rows[i].cog.as_str()).collect();
            writeln!(f, "shared {}: {}", self.invariant, names.join(" "))?;
        }
        Ok(())
    }
}

/// Connected census sizes by vertex count.
pub fn breakdown(cogs: &[Cog]) -> BTreeMap<usize, usize> {
    cogs.iter()
        .map(|c| c.num_vertices())
        .counts()
        .into_iter()
        .collect()
}
