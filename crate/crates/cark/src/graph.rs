//! The çark ribbon graph: a bipartite spine cycle with truncated Farey
//! branches attached to the filled vertices.

use crate::error::{Error, Result};
use crate::words::CarkTuple;
use serde_json::{json, Value};

pub const DEFAULT_DEPTH: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexKind {
    /// Unfilled vertex, always of degree 2.
    Circle,
    /// Filled vertex, of degree 1 or 3 in the untruncated graph.
    Disk,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Out,
    In,
}

impl Direction {
    pub fn label(self) -> &'static str {
        match self {
            Direction::Out => "out",
            Direction::In => "in",
        }
    }
}

/// A truncated Farey branch hanging off one spine disk.
#[derive(Debug, Clone)]
pub struct Branch {
    /// Index into `spine_disks`.
    pub at: usize,
    pub direction: Direction,
    /// Root disk vertex of the branch; absent at depth 0.
    pub root: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct CarkGraph {
    pub depth: usize,
    pub kinds: Vec<VertexKind>,
    /// (u, v, on_spine)
    pub edges: Vec<(usize, usize, bool)>,
    /// Disk vertices in cyclic spine order.
    pub spine_disks: Vec<usize>,
    /// Circle vertices in cyclic spine order; circle i sits between disks i
    /// and i+1.
    pub spine_circles: Vec<usize>,
    pub branches: Vec<Branch>,
}

impl CarkGraph {
    fn add(&mut self, kind: VertexKind) -> usize {
        self.kinds.push(kind);
        self.kinds.len() - 1
    }

    /// Expand a branch disk: two children, each reached through a circle.
    fn grow(&mut self, disk: usize, level: usize) {
        if level >= self.depth {
            return;
        }
        for _ in 0..2 {
            let c = self.add(VertexKind::Circle);
            let d = self.add(VertexKind::Disk);
            self.edges.push((disk, c, false));
            self.edges.push((c, d, false));
            self.grow(d, level + 1);
        }
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|(a, b, _)| *a == v || *b == v)
            .count()
    }

    /// Bipartiteness plus the vertex-degree bounds of the construction.
    pub fn check_invariants(&self) -> bool {
        for (a, b, _) in &self.edges {
            if self.kinds[*a] == self.kinds[*b] {
                return false;
            }
        }
        self.kinds.iter().enumerate().all(|(v, k)| match k {
            VertexKind::Circle => self.degree(v) == 2 || self.degree(v) == 1,
            VertexKind::Disk => self.degree(v) <= 3,
        }) && self.spine_disks.len() == self.spine_circles.len()
    }

    pub fn spine_edge_count(&self) -> usize {
        self.edges.iter().filter(|(_, _, s)| *s).count()
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph cark {\n  layout=neato;\n  node [label=\"\"];\n");
        for (v, k) in self.kinds.iter().enumerate() {
            let style = match k {
                VertexKind::Circle => "shape=circle, style=solid, width=0.15",
                VertexKind::Disk => "shape=circle, style=filled, fillcolor=black, width=0.15",
            };
            out.push_str(&format!("  v{v} [{style}];\n"));
        }
        for (a, b, spine) in &self.edges {
            let attr = if *spine { " [penwidth=2.0]" } else { " [penwidth=0.8]" };
            out.push_str(&format!("  v{a} -- v{b}{attr};\n"));
        }
        let outs: Vec<String> = self
            .branches
            .iter()
            .filter(|br| br.direction == Direction::Out)
            .filter_map(|br| br.root.map(|r| format!("v{r}")))
            .collect();
        let ins: Vec<String> = self
            .branches
            .iter()
            .filter(|br| br.direction == Direction::In)
            .filter_map(|br| br.root.map(|r| format!("v{r}")))
            .collect();
        if !outs.is_empty() {
            out.push_str(&format!("  {{ rank=min; {}; }}\n", outs.join("; ")));
        }
        if !ins.is_empty() {
            out.push_str(&format!("  {{ rank=max; {}; }}\n", ins.join("; ")));
        }
        out.push_str("}\n");
        out
    }

    fn tree_json(&self, disk: usize, parent_circle: Option<usize>) -> Value {
        let mut children = Vec::new();
        for (a, b, spine) in &self.edges {
            if *spine {
                continue;
            }
            let (u, v) = (*a, *b);
            let circle = if u == disk {
                v
            } else if v == disk {
                u
            } else {
                continue;
            };
            if Some(circle) == parent_circle || self.kinds[circle] != VertexKind::Circle {
                continue;
            }
            // the disk on the far side of this circle
            for (x, y, s) in &self.edges {
                if *s {
                    continue;
                }
                let far = if *x == circle && *y != disk {
                    Some(*y)
                } else if *y == circle && *x != disk {
                    Some(*x)
                } else {
                    None
                };
                if let Some(f) = far {
                    children.push(self.tree_json(f, Some(circle)));
                }
            }
        }
        json!({ "id": disk, "children": children })
    }

    pub fn to_json(&self) -> Value {
        let branches: Vec<Value> = self
            .branches
            .iter()
            .map(|br| {
                json!({
                    "at": br.at,
                    "direction": br.direction.label(),
                    "tree": br.root.map(|r| {
                        // the circle between the spine disk and the root
                        let spine_disk = self.spine_disks[br.at];
                        let circle = self.edges.iter().find_map(|(a, b, s)| {
                            if *s { return None; }
                            if *a == spine_disk && self.kinds[*b] == VertexKind::Circle
                                && self.edges.iter().any(|(x, y, _)| (*x == *b && *y == r) || (*y == *b && *x == r)) {
                                Some(*b)
                            } else if *b == spine_disk && self.kinds[*a] == VertexKind::Circle
                                && self.edges.iter().any(|(x, y, _)| (*x == *a && *y == r) || (*y == *a && *x == r)) {
                                Some(*a)
                            } else {
                                None
                            }
                        });
                        self.tree_json(r, circle)
                    }),
                })
            })
            .collect();
        json!({
            "depth": self.depth,
            "spine": self.spine_disks.iter().zip(&self.spine_circles)
                .flat_map(|(d, c)| [json!({"id": d, "kind": "disk"}), json!({"id": c, "kind": "circle"})])
                .collect::<Vec<Value>>(),
            "spine_edges": self.spine_edge_count(),
            "branches": branches,
        })
    }
}

/// Build the çark of a tuple: padding is stripped, each pair (m, n)
/// contributes m outward-branched disks followed by n inward-branched ones.
pub fn cark_graph(t: &CarkTuple, depth: usize) -> Result<CarkGraph> {
    let stripped = t.strip_padding();
    let mut dirs: Vec<Direction> = Vec::new();
    for (m, n) in stripped.pairs() {
        let m = usize::try_from(m)
            .map_err(|_| Error::InvalidTuple(format!("entry {m} too large for a drawing")))?;
        let n = usize::try_from(n)
            .map_err(|_| Error::InvalidTuple(format!("entry {n} too large for a drawing")))?;
        dirs.extend(std::iter::repeat(Direction::Out).take(m));
        dirs.extend(std::iter::repeat(Direction::In).take(n));
    }
    let count = dirs.len();
    let mut g = CarkGraph {
        depth,
        kinds: Vec::new(),
        edges: Vec::new(),
        spine_disks: Vec::new(),
        spine_circles: Vec::new(),
        branches: Vec::new(),
    };
    for _ in 0..count {
        let d = g.add(VertexKind::Disk);
        let c = g.add(VertexKind::Circle);
        g.spine_disks.push(d);
        g.spine_circles.push(c);
    }
    for i in 0..count {
        g.edges.push((g.spine_disks[i], g.spine_circles[i], true));
        g.edges
            .push((g.spine_circles[i], g.spine_disks[(i + 1) % count], true));
    }
    for (i, dir) in dirs.into_iter().enumerate() {
        let root = if depth == 0 {
            None
        } else {
            let c = g.add(VertexKind::Circle);
            let d = g.add(VertexKind::Disk);
            g.edges.push((g.spine_disks[i], c, false));
            g.edges.push((c, d, false));
            g.grow(d, 1);
            Some(d)
        };
        g.branches.push(Branch {
            at: i,
            direction: dir,
            root,
        });
    }
    Ok(g)
}
