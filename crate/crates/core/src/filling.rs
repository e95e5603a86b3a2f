//! Quadratic-area fillings of loops by iterated FFTP shortening.
//!
//! Each ladder step `w_j -> w_{j+1}` contributes a corridor of cells, one per time
//! `t < |w_j|`, bounded by the edge `w_j(t) w_j(t+1)`, the cross-path to `w_{j+1}(t+1)`,
//! the edge (or single vertex, past the end) of `w_{j+1}` back to time `t`, and the
//! cross-path to `w_j(t)`. A cell is skipped only when it collapses entirely: both
//! cross-paths are empty and the two edges are the same labeled edge.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::alphabet::Word;
use crate::bounds::IsoperimetricProfile;
use crate::cayley::{Ball, PathTrace};
use crate::error::{Error, Result};
use crate::fftp::{find_shortening, Shortening};
use crate::group::GroupElement;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorridorCell {
    pub step: usize,
    pub t: usize,
    pub perimeter: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Filling {
    pub k: usize,
    /// `w = w_0, w_1, ..., w_m = ε`, strictly shrinking.
    pub ladder: Vec<Word>,
    pub cells: usize,
    pub max_perimeter: usize,
    /// Largest `d(1, v)` over every ladder point and cross-path vertex.
    pub max_vertex_radius: usize,
    pub corridor_cells: Vec<CorridorCell>,
}

impl Filling {
    pub fn steps(&self) -> usize {
        self.ladder.len().saturating_sub(1)
    }
}

/// Fills the loop `w` by repeated shortening at constant `k`.
pub fn fill_loop(ball: &Ball, k: usize, w: &Word) -> Result<Filling> {
    let spec = ball.spec();
    if spec.eval_word(w)? != spec.identity() {
        return Err(Error::NotALoop(spec.format_word(w)));
    }
    let mut ladder = vec![w.clone()];
    while !ladder.last().unwrap().is_empty() {
        let current = ladder.last().unwrap();
        match find_shortening(ball, current, k)? {
            Shortening::Found(witness) => ladder.push(witness.shortened),
            Shortening::NoWitness => {
                return Err(Error::WitnessNotFound {
                    step: ladder.len() - 1,
                    k,
                })
            }
        }
    }

    let mut max_vertex_radius = 0usize;
    let mut corridor_cells = Vec::new();
    for (step, pair) in ladder.windows(2).enumerate() {
        let upper = PathTrace::from_identity(spec, pair[0].clone())?;
        let lower = PathTrace::from_identity(spec, pair[1].clone())?;
        let mut cross = Vec::with_capacity(upper.len() + 1);
        for t in 0..=upper.len() {
            let (len, radius) = cross_path(ball, upper.at(t), lower.at(t))?;
            max_vertex_radius = max_vertex_radius.max(radius);
            cross.push(len);
        }
        for t in 0..upper.len() {
            let lower_edge = usize::from(t < lower.len());
            let same_edge = lower_edge == 1
                && cross[t] == 0
                && cross[t + 1] == 0
                && pair[0].letters()[t] == pair[1].letters()[t];
            if same_edge {
                continue;
            }
            corridor_cells.push(CorridorCell {
                step,
                t,
                perimeter: 1 + cross[t + 1] + lower_edge + cross[t],
            });
        }
    }
    Ok(Filling {
        k,
        cells: corridor_cells.len(),
        max_perimeter: corridor_cells
            .iter()
            .map(|c| c.perimeter)
            .max()
            .unwrap_or(0),
        max_vertex_radius,
        corridor_cells,
        ladder,
    })
}

/// Length of the lexicographically least geodesic from `g` to `h`, and the largest
/// distance from the identity along it.
fn cross_path(ball: &Ball, g: &GroupElement, h: &GroupElement) -> Result<(usize, usize)> {
    let spec = ball.spec();
    let diff = spec.difference(g, h);
    let geodesic = ball
        .enumerate_geodesics(&diff, 1)?
        .pop()
        .expect("ball vertices have a geodesic");
    let trace = PathTrace::new(spec, g.clone(), geodesic)?;
    let mut radius = 0;
    for p in trace.points() {
        radius = radius.max(ball.norm(p)?);
    }
    Ok((trace.len(), radius))
}

/// Whether every corridor vertex lies in `B(r + (2k+2)ρ(s))`, `s` the loop length.
/// Fails if the loop itself leaves `B(r)`.
pub fn check_filling_radius(
    ball: &Ball,
    filling: &Filling,
    r: usize,
    rho: &IsoperimetricProfile,
) -> Result<bool> {
    let spec = ball.spec();
    let Some(outer) = filling.ladder.first() else {
        return Ok(true);
    };
    let trace = PathTrace::from_identity(spec, outer.clone())?;
    for p in trace.points() {
        if ball.norm(p)? > r {
            return Err(Error::Precondition(format!(
                "loop {} leaves B({r})",
                spec.format_word(outer)
            )));
        }
    }
    let s = outer.len() as u64;
    let bound = BigUint::from(r) + BigUint::from(2 * filling.k + 2) * rho.eval(s)?;
    Ok(BigUint::from(filling.max_vertex_radius) <= bound)
}
