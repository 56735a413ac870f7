//! Resolving 4-valent directed graphs into a single circuit.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge {edge} uses vertex {vertex}, but the graph has {count} vertices")]
    VertexOutOfRange {
        edge: usize,
        vertex: usize,
        count: usize,
    },
    #[error(
        "vertex {vertex} has in-degree {indegree} and out-degree {outdegree}, expected 2 and 2"
    )]
    DegreeViolation {
        vertex: usize,
        indegree: usize,
        outdegree: usize,
    },
    #[error("component {0} does not exist")]
    NoSuchComponent(usize),
}

/// A directed multigraph with in- and out-degree two at every vertex,
/// plus some circles carrying no vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerGraph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    free_circles: usize,
    ins: Vec<[usize; 2]>,
    outs: Vec<[usize; 2]>,
}

/// A connected component: a set of vertices, or one free circle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphComponent {
    Vertices(Vec<usize>),
    FreeCircle,
}

impl EulerGraph {
    pub fn new(
        vertex_count: usize,
        edges: Vec<(usize, usize)>,
        free_circles: usize,
    ) -> Result<Self, GraphError> {
        let mut ins = vec![Vec::with_capacity(2); vertex_count];
        let mut outs = vec![Vec::with_capacity(2); vertex_count];
        for (edge, &(a, b)) in edges.iter().enumerate() {
            for vertex in [a, b] {
                if vertex >= vertex_count {
                    return Err(GraphError::VertexOutOfRange {
                        edge,
                        vertex,
                        count: vertex_count,
                    });
                }
            }
            outs[a].push(edge);
            ins[b].push(edge);
        }
        for vertex in 0..vertex_count {
            if ins[vertex].len() != 2 || outs[vertex].len() != 2 {
                return Err(GraphError::DegreeViolation {
                    vertex,
                    indegree: ins[vertex].len(),
                    outdegree: outs[vertex].len(),
                });
            }
        }
        Ok(EulerGraph {
            vertex_count,
            free_circles,
            ins: ins.into_iter().map(|v| [v[0], v[1]]).collect(),
            outs: outs.into_iter().map(|v| [v[0], v[1]]).collect(),
            edges,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn free_circles(&self) -> usize {
        self.free_circles
    }

    /// Weakly connected components, vertex components first.
    pub fn components(&self) -> Vec<GraphComponent> {
        let mut label = vec![usize::MAX; self.vertex_count];
        let mut out = Vec::new();
        for root in 0..self.vertex_count {
            if label[root] != usize::MAX {
                continue;
            }
            let id = out.len();
            label[root] = id;
            let mut stack = vec![root];
            let mut members = vec![root];
            while let Some(v) = stack.pop() {
                for &e in self.ins[v].iter().chain(self.outs[v].iter()) {
                    let (a, b) = self.edges[e];
                    for w in [a, b] {
                        if label[w] == usize::MAX {
                            label[w] = id;
                            members.push(w);
                            stack.push(w);
                        }
                    }
                }
            }
            members.sort_unstable();
            out.push(GraphComponent::Vertices(members));
        }
        out.extend((0..self.free_circles).map(|_| GraphComponent::FreeCircle));
        out
    }

    /// The out-edge following `edge` at its head under `choices`.
    ///
    /// Choice 0 pairs the in-edges with the out-edges in index order;
    /// choice 1 crosses them.
    pub fn successor(&self, edge: usize, choices: &[u8]) -> usize {
        let v = self.edges[edge].1;
        let slot = usize::from(self.ins[v][1] == edge);
        let slot = slot ^ usize::from(choices[v] == 1);
        self.outs[v][slot]
    }

    /// Number of circuits formed by the edges of the given vertices.
    pub fn circuits_on(&self, vertices: &[usize], choices: &[u8]) -> usize {
        let mut in_scope = vec![false; self.vertex_count];
        for &v in vertices {
            in_scope[v] = true;
        }
        let mut seen = vec![false; self.edges.len()];
        let mut circuits = 0;
        for e in 0..self.edges.len() {
            if seen[e] || !in_scope[self.edges[e].0] {
                continue;
            }
            circuits += 1;
            let mut cur = e;
            while !seen[cur] {
                seen[cur] = true;
                cur = self.successor(cur, choices);
            }
        }
        circuits
    }

    /// Total number of circuits, free circles included.
    pub fn circuit_count(&self, choices: &[u8]) -> usize {
        let all: Vec<usize> = (0..self.vertex_count).collect();
        self.circuits_on(&all, choices) + self.free_circles
    }
}

/// Per-vertex choices resolving one component into a single circuit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Resolution {
    /// Choice for every vertex of the graph; vertices outside the chosen
    /// component keep choice 0.
    pub choices: Vec<u8>,
    pub circuits: usize,
}

/// Builds the resolution from an Eulerian circuit of the component.
pub fn eulerian_resolution(g: &EulerGraph, component: usize) -> Result<Resolution, GraphError> {
    let comps = g.components();
    let comp = comps
        .get(component)
        .ok_or(GraphError::NoSuchComponent(component))?;
    let mut choices = vec![0u8; g.vertex_count];
    let vertices = match comp {
        GraphComponent::FreeCircle => {
            return Ok(Resolution {
                choices,
                circuits: 1,
            })
        }
        GraphComponent::Vertices(v) => v,
    };
    let circuit = hierholzer(g, vertices[0]);
    for k in 0..circuit.len() {
        let e_in = circuit[k];
        let e_out = circuit[(k + 1) % circuit.len()];
        let v = g.edges[e_in].1;
        let natural = g.outs[v][usize::from(g.ins[v][1] == e_in)];
        choices[v] = u8::from(natural != e_out);
    }
    let circuits = g.circuits_on(vertices, &choices);
    Ok(Resolution { choices, circuits })
}

/// A random admissible graph on `vertices` vertices, determined by `seed`.
///
/// Heads are a random permutation of the doubled vertex list, so the graph
/// may be disconnected and may carry loops.
pub fn random_euler_graph(seed: u64, vertices: usize, free_circles: usize) -> EulerGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut heads: Vec<usize> = (0..vertices).flat_map(|v| [v, v]).collect();
    heads.shuffle(&mut rng);
    let edges = heads
        .into_iter()
        .enumerate()
        .map(|(k, head)| (k / 2, head))
        .collect();
    EulerGraph::new(vertices, edges, free_circles).expect("degrees are two by construction")
}

/// Edge sequence of an Eulerian circuit through the component of `start`.
fn hierholzer(g: &EulerGraph, start: usize) -> Vec<usize> {
    let mut next_out = vec![0usize; g.vertex_count];
    let mut stack: Vec<(usize, Option<usize>)> = vec![(start, None)];
    let mut circuit = Vec::new();
    while let Some(&(v, via)) = stack.last() {
        if next_out[v] < 2 {
            let e = g.outs[v][next_out[v]];
            next_out[v] += 1;
            stack.push((g.edges[e].1, Some(e)));
        } else {
            stack.pop();
            if let Some(e) = via {
                circuit.push(e);
            }
        }
    }
    circuit.reverse();
    circuit
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_circle_only() {
        let g = EulerGraph::new(0, vec![], 1).unwrap();
        let r = eulerian_resolution(&g, 0).unwrap();
        assert!(r.choices.is_empty());
        assert_eq!(r.circuits, 1);
    }

    #[test]
    fn two_loops_at_one_vertex() {
        let g = EulerGraph::new(1, vec![(0, 0), (0, 0)], 0).unwrap();
        // Identity pairing follows each loop back into itself.
        assert_eq!(g.circuit_count(&[0]), 2);
        assert_eq!(g.circuit_count(&[1]), 1);
        let r = eulerian_resolution(&g, 0).unwrap();
        assert_eq!(r.circuits, 1);
        assert_eq!(r.choices, vec![1]);
    }

    #[test]
    fn degree_check() {
        assert!(matches!(
            EulerGraph::new(1, vec![(0, 0)], 0),
            Err(GraphError::DegreeViolation { .. })
        ));
    }

    #[test]
    fn two_components() {
        // A 2-cycle with doubled edges plus a separate vertex with two loops.
        let g =
            EulerGraph::new(3, vec![(0, 1), (0, 1), (1, 0), (1, 0), (2, 2), (2, 2)], 0).unwrap();
        assert_eq!(g.components().len(), 2);
        for c in 0..2 {
            assert_eq!(eulerian_resolution(&g, c).unwrap().circuits, 1);
        }
    }
}
