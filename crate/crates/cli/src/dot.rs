//! Hasse diagrams in Graphviz DOT.

use std::fmt::Write;

use antisat::{Family, SubsetMask};

fn is_proper_subset(a: u32, b: u32) -> bool {
    a != b && a & b == a
}

/// Pairs `(i, j)` of member indices where member `j` covers member `i`
/// within the family.
pub fn cover_edges(family: &Family) -> Vec<(usize, usize)> {
    let masks = family.masks();
    let mut edges = Vec::new();
    for (i, &a) in masks.iter().enumerate() {
        for (j, &b) in masks.iter().enumerate().skip(i + 1) {
            if !is_proper_subset(a, b) {
                continue;
            }
            let between = masks[i + 1..j]
                .iter()
                .any(|&c| is_proper_subset(a, c) && is_proper_subset(c, b));
            if !between {
                edges.push((i, j));
            }
        }
    }
    edges
}

/// Nodes in family order, one edge per cover relation, smaller sets at the
/// bottom.
pub fn emit_dot(family: &Family) -> String {
    let mut out = String::from("digraph hasse {\n    rankdir=BT;\n    node [shape=plaintext];\n");
    let ground = family.ground();
    for (i, &bits) in family.masks().iter().enumerate() {
        let set = SubsetMask::new(ground, bits).expect("member of family");
        writeln!(out, "    s{i} [label=\"{set}\"];").unwrap();
    }
    for (i, j) in cover_edges(family) {
        writeln!(out, "    s{i} -> s{j};").unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use antisat::{parse_family, six_saturated_family, GroundSize};

    #[test]
    fn chain_is_a_path() {
        let f = parse_family("n=3\n{}\n{2}\n{1,2}\n{1,2,3}\n").unwrap();
        assert_eq!(cover_edges(&f), vec![(0, 1), (1, 2), (2, 3)]);
        let dot = emit_dot(&f);
        assert_eq!(dot.matches("[label=").count(), 4);
        assert!(dot.contains("s0 [label=\"{}\"]"));
        assert!(dot.contains("s2 [label=\"{1,2}\"]"));
    }

    #[test]
    fn six_family_nodes_and_degrees() {
        let f = six_saturated_family(GroundSize::new(6).unwrap()).unwrap();
        let dot = emit_dot(&f);
        assert_eq!(dot.matches("[label=").count(), 25);
        let edges = cover_edges(&f);
        let masks = f.masks();
        for (i, &bits) in masks.iter().enumerate() {
            if bits.count_ones() != 2 {
                continue;
            }
            // each pair sits on both of its singletons and starts one chain upward
            let down = edges.iter().filter(|e| e.1 == i).count();
            let up = edges.iter().filter(|e| e.0 == i).count();
            assert_eq!((down, up), (2, 1), "{bits:b}");
        }
    }

    #[test]
    fn skips_sets_absent_between() {
        let f = parse_family("n=3\n{}\n{1,2,3}\n").unwrap();
        assert_eq!(cover_edges(&f), vec![(0, 1)]);
    }

    #[test]
    fn empty_family() {
        let f = Family::empty(GroundSize::new(4).unwrap());
        let dot = emit_dot(&f);
        assert!(!dot.contains("label=\"") && !dot.contains("->"));
    }
}
