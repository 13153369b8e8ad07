//! Property suites run by `cogpoly selfcheck`.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::enumerate::enumerate_cogs;
use crate::model::random::random_signed_rotation_system;
use crate::model::{cog_to_gec, gec_to_cog, Cog, GeneralisedGec, PointedGec};
use crate::multigraph::connected_multigraphs;
use crate::poly::{MultiPoly, Var};
use crate::saturation::{saturation_cog, saturation_recursive, saturation_statesum};
use crate::surface::{genus_range, GenusKind};
use crate::transition::{k_valuation_sum, transition_recursive, transition_statesum};
use crate::yamada::{flow_count, flow_count_tutte, invariant_y};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag} {}: {}", self.name, self.detail)
    }
}

fn result(name: &str, cases: usize, failures: Vec<String>) -> CheckResult {
    CheckResult {
        name: name.into(),
        passed: failures.is_empty(),
        detail: match failures.first() {
            None => format!("{cases} cases"),
            Some(f) => format!("{} of {cases} cases failed, first: {f}", failures.len()),
        },
    }
}

fn census(max_edges: usize) -> Vec<Cog> {
    (0..=max_edges)
        .flat_map(|m| enumerate_cogs(m, true, true).expect("census within guard"))
        .collect()
}

type Outcome = std::result::Result<(), String>;

fn check_each<T: Sync>(
    name: &str,
    items: &[T],
    f: impl Fn(&T) -> Outcome + Sync + Send,
) -> CheckResult {
    let failures: Vec<String> = items.par_iter().filter_map(|t| f(t).err()).collect();
    result(name, items.len(), failures)
}

fn verify(ok: bool, what: impl fmt::Display) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(what.to_string())
    }
}

fn tag<E: fmt::Display>(what: impl fmt::Display) -> impl FnOnce(E) -> String {
    move |e| format!("{what}: {e}")
}

pub fn involution_laws(samples: u64) -> CheckResult {
    let seeds: Vec<u64> = (0..samples).collect();
    check_each("petrial and flip laws", &seeds, |&seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_signed_rotation_system(&mut rng, 6);
        let a: Vec<usize> = (0..s.num_edges()).filter(|_| rng.gen()).collect();
        let v = rng.gen_range(0..s.num_vertices());
        let run = || -> crate::Result<bool> {
            let p = s.partial_petrial(&a)?;
            let flipped = s.vertex_flip(v)?;
            Ok(p.partial_petrial(&a)? == s
                && flipped.partial_petrial(&a)? == p.vertex_flip(v)?
                && p.underlying_cog() == s.underlying_cog()
                && flipped.underlying_cog() == s.underlying_cog())
        };
        verify(run().map_err(tag(seed))?, format!("seed {seed}"))
    })
}

pub fn saturation_methods() -> CheckResult {
    check_each("saturation methods agree", &census(3), |c| {
        let g = GeneralisedGec::from(cog_to_gec(c));
        let mut rev = g.e_edge_ids();
        rev.reverse();
        let r = saturation_recursive(&g, None).map_err(tag(c))?;
        let back = saturation_recursive(&g, Some(&rev)).map_err(tag(c))?;
        verify(
            r == saturation_statesum(&g) && r == saturation_cog(c) && back == r,
            c,
        )
    })
}

pub fn transition_methods() -> CheckResult {
    check_each(
        "transition recursion, state sum and k-valuations agree",
        &census(3),
        |c| {
            let g = PointedGec::from(cog_to_gec(c));
            let q = transition_recursive(&g, None).map_err(tag(c))?;
            verify(q == transition_statesum(&g), c)?;
            for k in 1..=3u32 {
                let at = q.substitute(Var::T, &MultiPoly::constant(k));
                verify(
                    k_valuation_sum(&g, k as usize).map_err(tag(c))? == at,
                    format!("{c} at k = {k}"),
                )?;
            }
            Ok(())
        },
    )
}

pub fn gec_round_trip() -> CheckResult {
    check_each("gec round trip", &census(3), |c| {
        verify(gec_to_cog(&cog_to_gec(c)) == *c, c)
    })
}

pub fn drawing_invariance() -> CheckResult {
    check_each("Y independent of drawing", &census(2), |c| {
        invariant_y(c, 4, 11).map(|_| ()).map_err(tag(c))
    })
}

pub fn flow_oracle(max_edges: usize) -> CheckResult {
    let graphs: Vec<_> = (0..=max_edges).flat_map(connected_multigraphs).collect();
    check_each("flow counts match Tutte", &graphs, |g| {
        let (a, b) = (flow_count(g, 4), flow_count_tutte(g, 4));
        verify(a == b, format!("{:?}: {a} versus {b}", g.edges()))
    })
}

fn is_interval(s: &std::collections::BTreeSet<usize>) -> bool {
    match (s.first(), s.last()) {
        (Some(&a), Some(&b)) => b - a + 1 == s.len(),
        _ => true,
    }
}

pub fn genus_intervals() -> CheckResult {
    let cogs: Vec<Cog> = census(3)
        .into_iter()
        .filter(|c| c.max_degree() <= 4)
        .collect();
    check_each("genus ranges are intervals", &cogs, |c| {
        let orientable = genus_range(c, GenusKind::Orientable).map_err(tag(c))?;
        let euler = genus_range(c, GenusKind::Euler).map_err(tag(c))?;
        verify(is_interval(&orientable) && is_interval(&euler), c)
    })
}

pub fn run_all() -> Vec<CheckResult> {
    vec![
        involution_laws(300),
        saturation_methods(),
        transition_methods(),
        gec_round_trip(),
        drawing_invariance(),
        flow_oracle(4),
        genus_intervals(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_suites_pass() {
        for r in [involution_laws(40), gec_round_trip(), flow_oracle(3)] {
            assert!(r.passed, "{r}");
        }
    }
}
