//! Finite metric balls of a Cayley graph, and paths through them.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::alphabet::{Letter, Word};
use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupSpec};

pub const DEFAULT_VERTEX_CAP: usize = 10_000_000;
const NO_EDGE: u32 = u32::MAX;

/// The ball `B(n)` around the identity with exact word-metric distances.
///
/// Vertices are stored in BFS order, so each sphere `S(m)` is a contiguous range.
#[derive(Debug, Clone)]
pub struct Ball {
    spec: GroupSpec,
    radius: usize,
    elements: Vec<GroupElement>,
    dist: Vec<u32>,
    index: HashMap<GroupElement, u32>,
    /// `adjacency[v * letters + x]`, `NO_EDGE` when the neighbor is outside the ball.
    adjacency: Vec<u32>,
    sphere_start: Vec<usize>,
}

impl Ball {
    pub fn build(spec: &GroupSpec, radius: usize) -> Result<Ball> {
        Self::build_with_cap(spec, radius, DEFAULT_VERTEX_CAP)
    }

    /// Layer-synchronous BFS; fails once more than `cap` vertices are discovered.
    pub fn build_with_cap(spec: &GroupSpec, radius: usize, cap: usize) -> Result<Ball> {
        let letters: Vec<Letter> = spec.alphabet().letters().collect();
        let nl = letters.len();
        let identity = spec.identity();
        let mut elements = vec![identity.clone()];
        let mut dist = vec![0u32];
        let mut index = HashMap::from([(identity, 0u32)]);
        let mut adjacency: Vec<u32> = Vec::new();
        let mut sphere_start = vec![0usize];
        let mut layer = 0..1usize;
        for m in 0..=radius {
            let neighbors: Vec<Vec<GroupElement>> = elements[layer.clone()]
                .par_iter()
                .map(|g| {
                    letters
                        .iter()
                        .map(|&x| spec.multiply_unchecked(g, x))
                        .collect()
                })
                .collect();
            adjacency.resize(elements.len() * nl, NO_EDGE);
            let next_start = elements.len();
            for (offset, row) in neighbors.into_iter().enumerate() {
                let v = layer.start + offset;
                for (x, h) in row.into_iter().enumerate() {
                    let target = match index.get(&h) {
                        Some(&i) => i,
                        None if m < radius => {
                            if elements.len() >= cap {
                                return Err(Error::BudgetExceeded {
                                    what: "ball vertex count",
                                    cap,
                                });
                            }
                            let i = elements.len() as u32;
                            index.insert(h.clone(), i);
                            elements.push(h);
                            dist.push(m as u32 + 1);
                            i
                        }
                        None => NO_EDGE,
                    };
                    adjacency[v * nl + x] = target;
                }
            }
            sphere_start.push(next_start);
            layer = next_start..elements.len();
            if layer.is_empty() && m < radius {
                // finite group exhausted; remaining spheres are empty
                for _ in m + 1..radius {
                    sphere_start.push(elements.len());
                }
                sphere_start.push(elements.len());
                break;
            }
        }
        adjacency.resize(elements.len() * nl, NO_EDGE);
        Ok(Ball {
            spec: spec.clone(),
            radius,
            elements,
            dist,
            index,
            adjacency,
            sphere_start,
        })
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, v: usize) -> &GroupElement {
        &self.elements[v]
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    /// `d(1, v)` for a vertex index.
    pub fn depth(&self, v: usize) -> usize {
        self.dist[v] as usize
    }

    pub fn index_of(&self, g: &GroupElement) -> Option<usize> {
        self.index.get(g).map(|&i| i as usize)
    }

    pub fn neighbor(&self, v: usize, x: Letter) -> Option<usize> {
        let t = self.adjacency[v * self.spec.alphabet().len() + x.index()];
        (t != NO_EDGE).then_some(t as usize)
    }

    /// Vertex indices of the sphere `S(m)`.
    pub fn sphere(&self, m: usize) -> std::ops::Range<usize> {
        if m > self.radius {
            return 0..0;
        }
        self.sphere_start[m]..self.sphere_start[m + 1]
    }

    fn out_of_ball(&self, context: impl Into<String>) -> Error {
        Error::OutOfBall {
            radius: self.radius,
            context: context.into(),
        }
    }

    /// `d(1, g)`.
    pub fn norm(&self, g: &GroupElement) -> Result<usize> {
        self.index_of(g)
            .map(|v| self.depth(v))
            .ok_or_else(|| self.out_of_ball(format!("element {}", self.spec.describe(g))))
    }

    /// `d(g, h) = d(1, g⁻¹h)`, exact; errors when `g⁻¹h` lies outside the ball.
    pub fn distance(&self, g: &GroupElement, h: &GroupElement) -> Result<usize> {
        if g == h {
            return Ok(0);
        }
        let diff = self.spec.difference(g, h);
        self.index_of(&diff)
            .map(|v| self.depth(v))
            .ok_or_else(|| self.out_of_ball(format!("g⁻¹h = {}", self.spec.describe(&diff))))
    }

    /// Whether `d(g, h) <= k`. Exact whenever `k <= radius`.
    pub fn within(&self, g: &GroupElement, h: &GroupElement, k: usize) -> bool {
        if g == h {
            return true;
        }
        let diff = self.spec.difference(g, h);
        matches!(self.index_of(&diff), Some(v) if self.depth(v) <= k)
    }

    pub fn is_geodesic(&self, w: &Word) -> Result<bool> {
        let end = self.spec.eval_word(w)?;
        Ok(self.norm(&end)? == w.len())
    }

    /// All geodesic words from 1 to `g` in lexicographic order, at most `cap` of them.
    pub fn enumerate_geodesics(&self, g: &GroupElement, cap: usize) -> Result<Vec<Word>> {
        let target = self
            .index_of(g)
            .ok_or_else(|| self.out_of_ball(format!("element {}", self.spec.describe(g))))?;
        self.geodesics_to(target, cap)
    }

    pub(crate) fn geodesics_to(&self, target: usize, cap: usize) -> Result<Vec<Word>> {
        let letters: Vec<Letter> = self.spec.alphabet().letters().collect();
        // vertices lying on some geodesic from 1 to target
        let mut on_geodesic = HashSet::from([target]);
        let mut frontier = vec![target];
        while let Some(v) = frontier.pop() {
            for &x in &letters {
                if let Some(u) = self.neighbor(v, x) {
                    if self.dist[u] + 1 == self.dist[v] && on_geodesic.insert(u) {
                        frontier.push(u);
                    }
                }
            }
        }
        let mut out = Vec::new();
        let mut stack: Vec<Letter> = Vec::new();
        self.geodesic_dfs(0, target, &letters, &on_geodesic, &mut stack, &mut out, cap);
        Ok(out)
    }

    #[allow(clippy::too_many_arguments)]
    fn geodesic_dfs(
        &self,
        v: usize,
        target: usize,
        letters: &[Letter],
        on_geodesic: &HashSet<usize>,
        stack: &mut Vec<Letter>,
        out: &mut Vec<Word>,
        cap: usize,
    ) {
        if out.len() >= cap {
            return;
        }
        if v == target {
            out.push(Word(stack.clone()));
            return;
        }
        for &x in letters {
            if let Some(u) = self.neighbor(v, x) {
                if self.dist[u] == self.dist[v] + 1 && on_geodesic.contains(&u) {
                    stack.push(x);
                    self.geodesic_dfs(u, target, letters, on_geodesic, stack, out, cap);
                    stack.pop();
                }
            }
        }
    }

    /// Graphviz rendering: vertices labeled by distance, one edge per generator.
    pub fn to_dot(&self) -> String {
        let al = self.spec.alphabet();
        let mut s = String::from("digraph ball {\n");
        for v in 0..self.len() {
            let _ = writeln!(s, "  v{v} [label=\"{}\"];", self.dist[v]);
        }
        for v in 0..self.len() {
            for &x in al.generators() {
                if let Some(u) = self.neighbor(v, x) {
                    let _ = writeln!(s, "  v{v} -> v{u} [label=\"{}\"];", al.name(x));
                }
            }
        }
        s.push_str("}\n");
        s
    }
}

/// `w(t)` for a path based at `base`: the point after `t` edges, held at the endpoint
/// once `t >= |w|`.
pub fn path_point(
    spec: &GroupSpec,
    base: &GroupElement,
    w: &Word,
    t: usize,
) -> Result<GroupElement> {
    spec.alphabet().check_word(w)?;
    Ok(spec.apply_word(base, &w.prefix(t)))
}

/// A word traced from a base point, with every integer-time point materialized.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathTrace {
    word: Word,
    points: Vec<GroupElement>,
}

impl PathTrace {
    pub fn new(spec: &GroupSpec, base: GroupElement, word: Word) -> Result<Self> {
        spec.alphabet().check_word(&word)?;
        let mut points = Vec::with_capacity(word.len() + 1);
        points.push(base);
        for &x in word.letters() {
            let next = spec.multiply_unchecked(points.last().unwrap(), x);
            points.push(next);
        }
        Ok(PathTrace { word, points })
    }

    pub fn from_identity(spec: &GroupSpec, word: Word) -> Result<Self> {
        Self::new(spec, spec.identity(), word)
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn base(&self) -> &GroupElement {
        &self.points[0]
    }

    pub fn end(&self) -> &GroupElement {
        self.points.last().unwrap()
    }

    pub fn points(&self) -> &[GroupElement] {
        &self.points
    }

    /// `w(t)` with the tail convention.
    pub fn at(&self, t: usize) -> &GroupElement {
        &self.points[t.min(self.word.len())]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ball_sizes() {
        let z2 = GroupSpec::free_abelian("ab").unwrap();
        assert_eq!(Ball::build(&z2, 0).unwrap().len(), 1);
        assert_eq!(Ball::build(&z2, 2).unwrap().len(), 13);
        let f2 = GroupSpec::free("ab").unwrap();
        assert_eq!(Ball::build(&f2, 2).unwrap().len(), 17);
    }

    #[test]
    fn budget_cap() {
        let f2 = GroupSpec::free("ab").unwrap();
        let err = Ball::build_with_cap(&f2, 5, 100).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { cap: 100, .. }));
    }

    #[test]
    fn finite_group_ball_saturates() {
        let al = crate::alphabet::GeneratorAlphabet::from_chars("s").unwrap();
        let s3 = GroupSpec::permutation(al, vec![vec![1, 2, 0]]).unwrap();
        let ball = Ball::build(&s3, 5).unwrap();
        assert_eq!(ball.len(), 3);
        assert_eq!(ball.sphere(1).len(), 2);
        assert!(ball.sphere(4).is_empty());
        assert!(ball.sphere(9).is_empty());
    }

    #[test]
    fn distances() {
        let z2 = GroupSpec::free_abelian("ab").unwrap();
        let ball = Ball::build(&z2, 2).unwrap();
        let a = z2.eval_word(&z2.parse_word("a").unwrap()).unwrap();
        let b = z2.eval_word(&z2.parse_word("b").unwrap()).unwrap();
        assert_eq!(ball.distance(&a, &a).unwrap(), 0);
        assert_eq!(ball.distance(&a, &b).unwrap(), 2);
        let far = z2.eval_word(&z2.parse_word("aaa").unwrap()).unwrap();
        assert!(matches!(
            ball.distance(&b, &far),
            Err(Error::OutOfBall { .. })
        ));

        let f2 = GroupSpec::free("ab").unwrap();
        let ball = Ball::build(&f2, 2).unwrap();
        let ab = f2.eval_word(&f2.parse_word("ab").unwrap()).unwrap();
        let a = f2.eval_word(&f2.parse_word("a").unwrap()).unwrap();
        assert_eq!(ball.distance(&ab, &a).unwrap(), 1);
    }

    #[test]
    fn geodesic_checks() {
        let z2 = GroupSpec::free_abelian("ab").unwrap();
        let ball = Ball::build(&z2, 3).unwrap();
        assert!(ball.is_geodesic(&Word::empty()).unwrap());
        assert!(!ball.is_geodesic(&z2.parse_word("aba'").unwrap()).unwrap());
        assert!(ball.is_geodesic(&z2.parse_word("aab").unwrap()).unwrap());
    }

    #[test]
    fn geodesic_enumeration() {
        let z2 = GroupSpec::free_abelian("ab").unwrap();
        let ball = Ball::build(&z2, 3).unwrap();
        let id = z2.identity();
        assert_eq!(
            ball.enumerate_geodesics(&id, 10).unwrap(),
            vec![Word::empty()]
        );
        let g = z2.eval_word(&z2.parse_word("ab").unwrap()).unwrap();
        let names: Vec<String> = ball
            .enumerate_geodesics(&g, 10)
            .unwrap()
            .iter()
            .map(|w| z2.format_word(w))
            .collect();
        assert_eq!(names, ["ab", "ba"]);
        let g = z2.eval_word(&z2.parse_word("aabb").unwrap()).unwrap();
        assert!(ball.enumerate_geodesics(&g, 10).is_err());
        let g = z2.eval_word(&z2.parse_word("aab").unwrap()).unwrap();
        assert_eq!(ball.enumerate_geodesics(&g, 2).unwrap().len(), 2);
        assert_eq!(ball.enumerate_geodesics(&g, 10).unwrap().len(), 3);

        let f2 = GroupSpec::free("ab").unwrap();
        let ball = Ball::build(&f2, 3).unwrap();
        let g = f2.eval_word(&f2.parse_word("ab").unwrap()).unwrap();
        let geos = ball.enumerate_geodesics(&g, 10).unwrap();
        assert_eq!(geos.len(), 1);
        assert_eq!(f2.format_word(&geos[0]), "ab");
    }

    #[test]
    fn path_points() {
        let f2 = GroupSpec::free("ab").unwrap();
        let w = f2.parse_word("ab").unwrap();
        let id = f2.identity();
        assert_eq!(path_point(&f2, &id, &w, 0).unwrap(), id);
        let end = f2.eval_word(&w).unwrap();
        assert_eq!(path_point(&f2, &id, &w, 5).unwrap(), end);
        let g = f2.eval_word(&f2.parse_word("b").unwrap()).unwrap();
        let a = f2.parse_word("a").unwrap();
        let ga = f2.eval_word(&f2.parse_word("ba").unwrap()).unwrap();
        assert_eq!(path_point(&f2, &g, &a, 1).unwrap(), ga);
        let trace = PathTrace::from_identity(&f2, w).unwrap();
        assert_eq!(trace.at(7), &end);
        assert_eq!(trace.points().len(), 3);
    }

    #[test]
    fn dot_export_lists_generator_edges() {
        let z2 = GroupSpec::free_abelian("ab").unwrap();
        let ball = Ball::build(&z2, 1).unwrap();
        let dot = ball.to_dot();
        assert!(dot.starts_with("digraph ball {"));
        assert_eq!(dot.matches("->").count(), 4);
        assert_eq!(dot.matches("[label=\"1\"]").count(), 4);
    }
}
