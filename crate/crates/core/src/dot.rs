//! Graphviz DOT output for monoid views, charts with identification edges, and Hasse diagrams.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::fate::box_tangibles;
use crate::ghost::GhostValue;
use crate::monomial::Monomial;
use crate::quotients::{NormalForm, QuotientElement, QuotientPresentation};

/// A small DOT graph kept in insertion order, so output is byte-stable.
#[derive(Clone, Debug, Default)]
pub struct Graph {
    name: String,
    attributes: Vec<String>,
    nodes: Vec<String>,
    edges: Vec<(String, String, String)>,
    same_rank: Vec<Vec<String>>,
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

impl Graph {
    pub fn new(name: &str) -> Self {
        Graph {
            name: name.to_string(),
            ..Graph::default()
        }
    }

    pub fn attribute(&mut self, a: &str) {
        self.attributes.push(a.to_string());
    }

    pub fn node(&mut self, id: &str) {
        if !self.nodes.iter().any(|n| n == id) {
            self.nodes.push(id.to_string());
        }
    }

    pub fn edge(&mut self, from: &str, to: &str, attrs: &str) {
        self.edges.push((from.to_string(), to.to_string(), attrs.to_string()));
    }

    pub fn same_rank(&mut self, ids: Vec<String>) {
        self.same_rank.push(ids);
    }

    pub fn render(&self) -> String {
        let mut out = format!("digraph {} {{\n", quote(&self.name));
        for a in &self.attributes {
            let _ = writeln!(out, "  {a};");
        }
        for n in &self.nodes {
            let _ = writeln!(out, "  {};", quote(n));
        }
        for (a, b, attrs) in &self.edges {
            if attrs.is_empty() {
                let _ = writeln!(out, "  {} -> {};", quote(a), quote(b));
            } else {
                let _ = writeln!(out, "  {} -> {} [{attrs}];", quote(a), quote(b));
            }
        }
        for group in &self.same_rank {
            let ids: Vec<String> = group.iter().map(|g| quote(g)).collect();
            let _ = writeln!(out, "  {{ rank=same; {}; }}", ids.join("; "));
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Clone, Debug, Default)]
pub struct DotOptions {
    /// Exponent box for views of monoids that are not tangibly finite.
    pub bound: Option<u32>,
    /// Rees view with chain top c^d: every product of a tangible by a generator that is
    /// ghost is drawn as 0, and the ghost row stops at c^d.
    pub rees: Option<u32>,
    /// Pairs drawn as undirected dashed identification edges.
    pub identifications: Vec<(Monomial, Monomial)>,
}

/// Tangibles of the view, sorted by (degree, monomial order).
fn view(u: &QuotientPresentation, bound: Option<u32>) -> Result<Vec<Monomial>> {
    let mut t = match u.form() {
        NormalForm::TangiblyFinite(f) => f.tangibles().to_vec(),
        NormalForm::IdealPresented { .. } => {
            let b = bound
                .ok_or_else(|| Error::Precondition("a monoid that is not tangibly finite needs a bound".into()))?;
            box_tangibles(u, b)?
        }
    };
    let a = u.ambient();
    t.sort_by(|x, y| a.degree(x).cmp(&a.degree(y)).then(x.cmp(y)));
    Ok(t)
}

/// Tangible nodes with solid `×g` arrows, and the ghost row e, c, …, 0. Products that
/// leave the ambient (u alone in 𝔄′) draw no arrow.
pub fn monoid_dot(u: &QuotientPresentation, name: &str, options: &DotOptions) -> Result<String> {
    let a = u.ambient();
    let tangibles = view(u, options.bound)?;
    let mut g = Graph::new(name);
    if tangibles.is_empty() {
        return Ok(g.render());
    }
    g.attribute("rankdir=LR");
    g.attribute("node [shape=plaintext]");
    let inside: BTreeSet<&Monomial> = tangibles.iter().collect();
    for t in &tangibles {
        g.node(&a.format_monomial(t));
    }
    let mut ghosts = BTreeSet::new();
    for t in &tangibles {
        ghosts.insert(u.nu(&QuotientElement::Tangible(t.clone())));
        for i in 0..a.rank() {
            let label = format!("label=\"×{}\"", a.generators()[i].name);
            let product = t.mul(&a.generator(i));
            if !a.is_tangible(&product) {
                continue;
            }
            let target = match u.project(&product)? {
                QuotientElement::Tangible(z) if inside.contains(&z) => a.format_monomial(&z),
                QuotientElement::Tangible(_) => continue,
                QuotientElement::Ghost(h) => {
                    let h = if options.rees.is_some() { GhostValue::Zero } else { h };
                    ghosts.insert(h);
                    h.to_string()
                }
            };
            g.edge(&a.format_monomial(t), &target, &label);
        }
    }
    let top = match options.rees {
        Some(d) => d,
        None => ghosts.iter().filter_map(|h| h.exponent()).max().unwrap_or(0),
    };
    let mut row: Vec<GhostValue> = (0..=top).map(GhostValue::Power).collect();
    row.push(GhostValue::Zero);
    let ids: Vec<String> = row.iter().map(|h| h.to_string()).collect();
    for id in &ids {
        g.node(id);
    }
    // c^top·c is 0 only in the Rees view; otherwise 0 sits apart at the end of the row
    let chained = if options.rees.is_some() {
        ids.len()
    } else {
        ids.len() - 1
    };
    for w in ids[..chained].windows(2) {
        g.edge(&w[0], &w[1], "label=\"×c\"");
    }
    g.same_rank(ids);
    for (x, y) in &options.identifications {
        g.edge(&a.format_monomial(x), &a.format_monomial(y), "style=dashed, dir=none");
    }
    Ok(g.render())
}

/// Hasse diagram of a finite poset; `leq(i, j)` must be a partial order on the indices.
pub fn hasse_dot(name: &str, labels: &[String], leq: impl Fn(usize, usize) -> bool) -> String {
    let mut g = Graph::new(name);
    if labels.is_empty() {
        return g.render();
    }
    g.attribute("rankdir=BT");
    g.attribute("node [shape=box]");
    for l in labels {
        g.node(l);
    }
    let n = labels.len();
    let lt = |i: usize, j: usize| i != j && leq(i, j) && !leq(j, i);
    for i in 0..n {
        for j in 0..n {
            if lt(i, j) && !(0..n).any(|k| lt(i, k) && lt(k, j)) {
                g.edge(&labels[i], &labels[j], "dir=none");
            }
        }
    }
    g.render()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn empty_graph_is_header_only() {
        assert_eq!(Graph::new("empty").render(), "digraph \"empty\" {\n}\n");
        assert_eq!(hasse_dot("h", &[], |_, _| true), "digraph \"h\" {\n}\n");
    }

    #[test]
    fn u3_rees_view() {
        let u = catalog::u_d(3).unwrap();
        let opts = DotOptions {
            rees: Some(3),
            ..DotOptions::default()
        };
        let dot = monoid_dot(&u, "U3", &opts).unwrap();
        assert!(
            dot.contains("{ rank=same; \"e\"; \"c\"; \"c^2\"; \"c^3\"; \"0\"; }"),
            "{dot}"
        );
        assert!(dot.contains("\"x^3\" -> \"0\" [label=\"×x\"]"));
        assert!(dot.contains("\"u*x\" -> \"u^2*x\" [label=\"×u\"]"));
        assert!(dot.contains("\"u^3\" -> \"0\" [label=\"×u\"]"));
        let arrows = dot.lines().filter(|l| l.contains("×u") || l.contains("×x")).count();
        assert_eq!(arrows, 20);
        let plain = monoid_dot(&u, "U3", &DotOptions::default()).unwrap();
        assert!(plain.contains("\"c^4\""));
        assert!(dot.contains("\"c^3\" -> \"0\" [label=\"×c\"]"));
        assert!(!plain.contains("\"c^4\" -> \"0\""));
        assert_eq!(dot, monoid_dot(&u, "U3", &opts).unwrap());
    }

    #[test]
    fn ideal_presented_needs_a_bound() {
        let u = catalog::u_prime(2, 3).unwrap();
        assert!(monoid_dot(&u, "U", &DotOptions::default()).is_err());
        let opts = DotOptions {
            bound: Some(3),
            ..DotOptions::default()
        };
        assert!(monoid_dot(&u, "U", &opts).unwrap().contains("\"u*x\""));
    }

    #[test]
    fn hasse_drops_transitive_edges() {
        let labels: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        let dot = hasse_dot("chain", &labels, |i, j| i <= j);
        assert!(dot.contains("\"a\" -> \"b\""));
        assert!(!dot.contains("\"a\" -> \"c\""));
    }
}
