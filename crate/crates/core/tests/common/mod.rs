//! Brute-force oracles built only from word enumeration and group multiplication.

#![allow(dead_code)]

use std::collections::{HashMap, HashSet, VecDeque};

use fftp_core::alphabet::Letter;
use fftp_core::{GroupElement, GroupSpec, Word};

/// Word metric on all elements reachable by words of length `<= n`.
pub struct DistanceTable {
    pub spec: GroupSpec,
    pub radius: usize,
    pub norm: HashMap<GroupElement, usize>,
}

impl DistanceTable {
    /// Evaluates every word of length `<= n` letter by letter.
    pub fn by_enumeration(spec: &GroupSpec, n: usize) -> Self {
        let mut norm = HashMap::new();
        for len in 0..=n {
            for w in spec.alphabet().words_of_length(len) {
                let g = spec.eval_word(&w).unwrap();
                norm.entry(g).or_insert(len);
            }
        }
        DistanceTable {
            spec: spec.clone(),
            radius: n,
            norm,
        }
    }

    pub fn ball_size(&self, m: usize) -> usize {
        self.norm.values().filter(|&&d| d <= m).count()
    }

    pub fn norm_of(&self, g: &GroupElement) -> Option<usize> {
        self.norm.get(g).copied()
    }

    pub fn dist(&self, g: &GroupElement, h: &GroupElement) -> Option<usize> {
        let diff = self.spec.product(&self.spec.invert(g), h);
        self.norm_of(&diff)
    }

    pub fn sphere(&self, m: usize) -> Vec<GroupElement> {
        let mut out: Vec<_> = self
            .norm
            .iter()
            .filter(|(_, &d)| d == m)
            .map(|(g, _)| g.clone())
            .collect();
        out.sort_by_key(|g| format!("{g:?}"));
        out
    }
}

pub fn points(spec: &GroupSpec, w: &Word) -> Vec<GroupElement> {
    let mut g = spec.identity();
    let mut out = vec![g.clone()];
    for &x in w.letters() {
        g = spec.multiply(&g, x).unwrap();
        out.push(g.clone());
    }
    out
}

fn at(p: &[GroupElement], t: usize) -> &GroupElement {
    &p[t.min(p.len() - 1)]
}

pub fn sync_oracle(table: &DistanceTable, w: &Word, u: &Word) -> usize {
    let (pw, pu) = (points(&table.spec, w), points(&table.spec, u));
    (0..=w.len().max(u.len()))
        .map(|t| table.dist(at(&pw, t), at(&pu, t)).expect("table too small"))
        .max()
        .unwrap()
}

/// Minimum over every monotone lattice matching of the largest matched distance.
pub fn async_oracle(table: &DistanceTable, w: &Word, u: &Word) -> usize {
    let (pw, pu) = (points(&table.spec, w), points(&table.spec, u));
    let mut best = usize::MAX;
    let mut stack = vec![(0usize, 0usize, 0usize)];
    while let Some((i, j, worst)) = stack.pop() {
        let worst = worst.max(table.dist(&pw[i], &pu[j]).expect("table too small"));
        if worst >= best {
            continue;
        }
        if i == w.len() && j == u.len() {
            best = worst;
            continue;
        }
        for (di, dj) in [(1, 1), (1, 0), (0, 1)] {
            if i + di <= w.len() && j + dj <= u.len() {
                stack.push((i + di, j + dj, worst));
            }
        }
    }
    best
}

/// Shortest, then lexicographically least, `u` with `ū = w̄`, `|u| < |w|`, sync
/// distance `<= k`; found by trying every shorter word.
pub fn shortening_oracle(table: &DistanceTable, w: &Word, k: usize) -> Option<Word> {
    let target = table.spec.eval_word(w).unwrap();
    for len in 0..w.len() {
        for u in table.spec.alphabet().words_of_length(len) {
            if table.spec.eval_word(&u).unwrap() == target && sync_oracle(table, w, &u) <= k {
                return Some(u);
            }
        }
    }
    None
}

/// Smallest `k <= k_max` such that every non-geodesic word of length `<= max_len`
/// has a shortening.
pub fn min_k_oracle(table: &DistanceTable, max_len: usize, k_max: usize) -> Option<usize> {
    let mut bad: Vec<Word> = Vec::new();
    for len in 0..=max_len {
        for w in table.spec.alphabet().words_of_length(len) {
            let g = table.spec.eval_word(&w).unwrap();
            if table.norm_of(&g).unwrap() < w.len() {
                bad.push(w);
            }
        }
    }
    (0..=k_max).find(|&k| bad.iter().all(|w| shortening_oracle(table, w, k).is_some()))
}

/// Truncated cone type of `g`: words of length `<= depth` extending it geodesically.
pub fn cone_set(table: &DistanceTable, g: &GroupElement, depth: usize) -> Vec<Word> {
    let base = table.norm_of(g).unwrap();
    let mut out = Vec::new();
    for len in 0..=depth {
        for v in table.spec.alphabet().words_of_length(len) {
            let mut h = g.clone();
            let mut ok = true;
            for (s, &x) in v.letters().iter().enumerate() {
                h = table.spec.multiply(&h, x).unwrap();
                if table.norm_of(&h) != Some(base + s + 1) {
                    ok = false;
                    break;
                }
            }
            if ok {
                out.push(v);
            }
        }
    }
    out
}

/// Number of distinct truncated cone types among elements with `|g| + depth <= radius`.
pub fn cone_class_count(table: &DistanceTable, depth: usize) -> usize {
    let classes: HashSet<Vec<Word>> = table
        .norm
        .iter()
        .filter(|(_, &d)| d + depth <= table.radius)
        .map(|(g, _)| cone_set(table, g, depth))
        .collect();
    classes.len()
}

/// `C(i, n)` by BFS inside `B(n)` from every sphere point; `None` if some pair is
/// disconnected inside the ball.
pub fn ac_oracle(table: &DistanceTable, i: usize, n: usize) -> Option<usize> {
    let letters: Vec<Letter> = table.spec.alphabet().letters().collect();
    let sphere = table.sphere(n);
    let mut worst = 0usize;
    for g in &sphere {
        let mut dist: HashMap<GroupElement, usize> = HashMap::from([(g.clone(), 0)]);
        let mut queue = VecDeque::from([g.clone()]);
        while let Some(v) = queue.pop_front() {
            let dv = dist[&v];
            for &x in &letters {
                let u = table.spec.multiply(&v, x).unwrap();
                if table.norm_of(&u).is_some_and(|d| d <= n) && !dist.contains_key(&u) {
                    dist.insert(u.clone(), dv + 1);
                    queue.push_back(u);
                }
            }
        }
        for h in &sphere {
            if table.dist(g, h).is_some_and(|d| d <= i) {
                worst = worst.max(*dist.get(h)?);
            }
        }
    }
    Some(worst)
}
