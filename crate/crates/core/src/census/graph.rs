//! Meet graph of a set of lines and the coplanar triples around each line.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::field::Field;
use crate::linalg;
use crate::surface::{lines_meet, Meet, ProjLine};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TripleKind {
    /// Three lines meeting in three distinct points.
    Triangle,
    /// Three concurrent lines.
    Star,
}

/// Three lines lying in one plane with the pivot.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Triple {
    pub pivot: usize,
    pub lines: [usize; 3],
    pub kind: TripleKind,
}

#[derive(Clone, Debug, Serialize)]
pub struct IncidenceGraph {
    pub edges: Vec<(usize, usize)>,
    pub degrees: Vec<usize>,
    pub triples: Vec<Triple>,
    /// Per vertex, the sizes of its neighbour groups by plane through it, descending.
    pub plane_groups: Vec<Vec<usize>>,
}

impl IncidenceGraph {
    pub fn neighbours(&self, v: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn triples_at(&self, v: usize) -> impl Iterator<Item = &Triple> {
        self.triples.iter().filter(move |t| t.pivot == v)
    }

    pub fn max_degree(&self) -> usize {
        self.degrees.iter().copied().max().unwrap_or(0)
    }
}

/// The plane spanned by a line and a point off it, as a normalized linear form.
fn plane_through<F: Field>(f: &F, l: &ProjLine<F::Elem>, x: &[F::Elem]) -> Vec<F::Elem> {
    let m = vec![l.basis()[0].clone(), l.basis()[1].clone(), x.to_vec()];
    let ker = linalg::kernel(f, &m, 4);
    linalg::normalize(f, &ker[0]).expect("nonzero form")
}

/// Builds the graph, grouping each vertex's neighbours by the plane they span with it.
pub fn incidence_graph<F: Field>(f: &F, lines: &[ProjLine<F::Elem>]) -> IncidenceGraph {
    let n = lines.len();
    let mut meet: Vec<Vec<Option<Meet<F::Elem>>>> = vec![vec![None; n]; n];
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let m = lines_meet(f, &lines[i], &lines[j]);
            if !matches!(m, Meet::Disjoint) {
                edges.push((i, j));
            }
            meet[i][j] = Some(m.clone());
            meet[j][i] = Some(m);
        }
    }
    let mut degrees = vec![0; n];
    for &(a, b) in &edges {
        degrees[a] += 1;
        degrees[b] += 1;
    }
    let mut triples = Vec::new();
    let mut plane_groups = Vec::new();
    for v in 0..n {
        let mut groups: BTreeMap<Vec<F::Elem>, Vec<usize>> = BTreeMap::new();
        for w in 0..n {
            if w == v {
                continue;
            }
            if let Some(Meet::Point(_)) = &meet[v][w] {
                // a point of w off v
                let b = &lines[w].basis();
                let x = if lines[v].contains_point(f, &b[0]) {
                    &b[1]
                } else {
                    &b[0]
                };
                groups
                    .entry(plane_through(f, &lines[v], x))
                    .or_default()
                    .push(w);
            }
        }
        let mut sizes: Vec<usize> = groups.values().map(|g| g.len()).collect();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        plane_groups.push(sizes);
        for g in groups.values().filter(|g| g.len() == 3) {
            let pt = |a: usize, b: usize| match &meet[a][b] {
                Some(Meet::Point(p)) => Some(p.clone()),
                _ => None,
            };
            let (p01, p02, p12) = (pt(g[0], g[1]), pt(g[0], g[2]), pt(g[1], g[2]));
            let kind = if p01.is_some() && p01 == p02 && p01 == p12 {
                TripleKind::Star
            } else {
                TripleKind::Triangle
            };
            triples.push(Triple {
                pivot: v,
                lines: [g[0], g[1], g[2]],
                kind,
            });
        }
    }
    IncidenceGraph {
        edges,
        degrees,
        triples,
        plane_groups,
    }
}
