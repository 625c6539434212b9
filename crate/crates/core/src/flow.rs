//! Integral max-flow (Dinic) and feasibility of flows with lower bounds on
//! edges, via the usual excess/deficit circulation transform.

use std::collections::VecDeque;

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    cap: u64,
}

/// Residual network. Arc `2i` is edge `i`, arc `2i + 1` its reverse.
#[derive(Debug, Clone)]
pub(crate) struct FlowNetwork {
    adj: Vec<Vec<usize>>,
    arcs: Vec<Arc>,
}

impl FlowNetwork {
    pub(crate) fn new(nodes: usize) -> Self {
        Self {
            adj: vec![Vec::new(); nodes],
            arcs: Vec::new(),
        }
    }

    pub(crate) fn add_node(&mut self) -> usize {
        self.adj.push(Vec::new());
        self.adj.len() - 1
    }

    /// Returns the edge id.
    pub(crate) fn add_edge(&mut self, from: usize, to: usize, cap: u64) -> usize {
        let id = self.arcs.len() / 2;
        self.adj[from].push(self.arcs.len());
        self.arcs.push(Arc { to, cap });
        self.adj[to].push(self.arcs.len());
        self.arcs.push(Arc { to: from, cap: 0 });
        id
    }

    /// Flow currently pushed along edge `id`.
    pub(crate) fn flow(&self, id: usize) -> u64 {
        self.arcs[2 * id + 1].cap
    }

    pub(crate) fn max_flow(&mut self, source: usize, sink: usize) -> u64 {
        let n = self.adj.len();
        let mut total = 0;
        let mut level = vec![usize::MAX; n];
        let mut next = vec![0usize; n];
        loop {
            level.fill(usize::MAX);
            level[source] = 0;
            let mut queue = VecDeque::from([source]);
            while let Some(u) = queue.pop_front() {
                for &a in &self.adj[u] {
                    let Arc { to, cap } = self.arcs[a];
                    if cap > 0 && level[to] == usize::MAX {
                        level[to] = level[u] + 1;
                        queue.push_back(to);
                    }
                }
            }
            if level[sink] == usize::MAX {
                return total;
            }
            next.fill(0);
            loop {
                let pushed = self.push(source, sink, u64::MAX, &level, &mut next);
                if pushed == 0 {
                    break;
                }
                total += pushed;
            }
        }
    }

    fn push(&mut self, u: usize, sink: usize, limit: u64, level: &[usize], next: &mut [usize]) -> u64 {
        if u == sink {
            return limit;
        }
        while next[u] < self.adj[u].len() {
            let a = self.adj[u][next[u]];
            let Arc { to, cap } = self.arcs[a];
            if cap > 0 && level[to] == level[u] + 1 {
                let got = self.push(to, sink, limit.min(cap), level, next);
                if got > 0 {
                    self.arcs[a].cap -= got;
                    self.arcs[a ^ 1].cap += got;
                    return got;
                }
            }
            next[u] += 1;
        }
        0
    }
}

/// Edge with flow bounds `lower ..= upper`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct BoundedEdge {
    pub from: usize,
    pub to: usize,
    pub lower: u64,
    pub upper: u64,
}

/// Finds a circulation satisfying every edge's bounds, returning the flow on
/// each edge in input order, or `None` if no such circulation exists.
pub(crate) fn feasible_circulation(nodes: usize, edges: &[BoundedEdge]) -> Option<Vec<u64>> {
    let mut net = FlowNetwork::new(nodes);
    let mut excess = vec![0i64; nodes];
    let mut ids = Vec::with_capacity(edges.len());
    for e in edges {
        if e.lower > e.upper {
            return None;
        }
        ids.push(net.add_edge(e.from, e.to, e.upper - e.lower));
        excess[e.to] += e.lower as i64;
        excess[e.from] -= e.lower as i64;
    }
    let source = net.add_node();
    let sink = net.add_node();
    let mut demand = 0u64;
    for (v, &x) in excess.iter().enumerate() {
        if x > 0 {
            net.add_edge(source, v, x as u64);
            demand += x as u64;
        } else if x < 0 {
            net.add_edge(v, sink, (-x) as u64);
        }
    }
    if net.max_flow(source, sink) != demand {
        return None;
    }
    Some(
        edges
            .iter()
            .zip(ids)
            .map(|(e, id)| e.lower + net.flow(id))
            .collect(),
    )
}
