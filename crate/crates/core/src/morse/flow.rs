use crate::category::{ArrIx, LoopFreeCategory, ObjIx};

use super::field::VectorField;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeKind {
    /// A vector, kept with its orientation.
    Forward(ArrIx),
    /// A non-vector indecomposable arrow, reversed.
    Reversed(ArrIx),
    /// The identity of a critical object.
    SelfLoop,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FlowEdge {
    pub from: ObjIx,
    pub to: ObjIx,
    pub kind: EdgeKind,
}

impl FlowEdge {
    pub fn arrow(&self) -> Option<ArrIx> {
        match self.kind {
            EdgeKind::Forward(a) | EdgeKind::Reversed(a) => Some(a),
            EdgeKind::SelfLoop => None,
        }
    }
}

/// The directed multigraph obtained from the indecomposable arrows by
/// reversing every non-vector and adding a loop at each critical object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowGraph {
    nodes: usize,
    edges: Vec<FlowEdge>,
    out: Vec<Vec<usize>>,
}

impl FlowGraph {
    pub fn num_nodes(&self) -> usize {
        self.nodes
    }

    pub fn edges(&self) -> &[FlowEdge] {
        &self.edges
    }

    /// Edge indices leaving `o`.
    pub fn out_edges(&self, o: ObjIx) -> &[usize] {
        &self.out[o]
    }

    pub fn successors(&self, o: ObjIx) -> impl Iterator<Item = ObjIx> + '_ {
        self.out[o].iter().map(|&e| self.edges[e].to)
    }

    pub fn has_self_loop(&self, o: ObjIx) -> bool {
        self.out[o].iter().any(|&e| self.edges[e].to == o)
    }

    /// Strongly connected components, each sorted, listed by smallest member.
    pub fn strongly_connected_components(&self) -> Vec<Vec<ObjIx>> {
        let mut comps = tarjan(self.nodes, |v| self.successors(v));
        for c in &mut comps {
            c.sort_unstable();
        }
        comps.sort();
        comps
    }
}

pub fn build_flow_graph(cat: &LoopFreeCategory, field: &VectorField) -> FlowGraph {
    let mut edges = Vec::new();
    for a in cat.indecomposable_arrows() {
        let arrow = cat.arrow(a);
        edges.push(if field.contains(a) {
            FlowEdge {
                from: arrow.src,
                to: arrow.tgt,
                kind: EdgeKind::Forward(a),
            }
        } else {
            FlowEdge {
                from: arrow.tgt,
                to: arrow.src,
                kind: EdgeKind::Reversed(a),
            }
        });
    }
    for c in field.critical_objects(cat) {
        edges.push(FlowEdge {
            from: c,
            to: c,
            kind: EdgeKind::SelfLoop,
        });
    }
    let mut out = vec![Vec::new(); cat.num_objects()];
    for (i, e) in edges.iter().enumerate() {
        out[e.from].push(i);
    }
    FlowGraph {
        nodes: cat.num_objects(),
        edges,
        out,
    }
}

/// Iterative Tarjan; components come out in reverse topological order.
fn tarjan<F, I>(n: usize, successors: F) -> Vec<Vec<usize>>
where
    F: Fn(usize) -> I,
    I: Iterator<Item = usize>,
{
    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comps = Vec::new();
    let mut next = 0;

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        let mut call: Vec<(usize, I)> = Vec::new();
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root);
        on_stack[root] = true;
        call.push((root, successors(root)));

        while let Some((v, iter)) = call.last_mut() {
            let v = *v;
            if let Some(w) = iter.next() {
                if index[w] == UNSEEN {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, successors(w)));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().unwrap();
                    on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comps.push(comp);
            }
        }
    }
    comps
}
