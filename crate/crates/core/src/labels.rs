//! Isomorphism types of standard parabolic subgroups, read off the Coxeter graph.

use crate::subset::GeneratorSubset;

/// The Coxeter type of `W_K`, e.g. `"A2xA1"`; the trivial group is `"1"`.
///
/// Components are listed by decreasing rank, ties broken by name.
pub fn iso_type(coxeter_matrix: &[Vec<u32>], k: GeneratorSubset) -> String {
    let mut parts: Vec<(usize, String)> = components(coxeter_matrix, k)
        .iter()
        .map(|c| (c.len(), component_type(coxeter_matrix, c)))
        .collect();
    if parts.is_empty() {
        return "1".to_string();
    }
    parts.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)));
    parts
        .into_iter()
        .map(|(_, s)| s)
        .collect::<Vec<_>>()
        .join("x")
}

/// Connected components of the Coxeter graph restricted to `k`.
pub fn components(coxeter_matrix: &[Vec<u32>], k: GeneratorSubset) -> Vec<Vec<usize>> {
    let mut left = k.mask();
    let mut out = Vec::new();
    while left != 0 {
        let start = left.trailing_zeros() as usize;
        let mut comp = vec![start];
        left &= !(1 << start);
        let mut i = 0;
        while i < comp.len() {
            let a = comp[i];
            for b in GeneratorSubset(left).indices().collect::<Vec<_>>() {
                if coxeter_matrix[a][b] > 2 {
                    comp.push(b);
                    left &= !(1 << b);
                }
            }
            i += 1;
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

fn component_type(cm: &[Vec<u32>], comp: &[usize]) -> String {
    let k = comp.len();
    if k == 1 {
        return "A1".to_string();
    }
    let mut edges = Vec::new();
    for (x, &a) in comp.iter().enumerate() {
        for &b in &comp[x + 1..] {
            if cm[a][b] > 2 {
                edges.push((a, b, cm[a][b]));
            }
        }
    }
    let degree = |v: usize| edges.iter().filter(|e| e.0 == v || e.1 == v).count();
    if k == 2 {
        return match edges[0].2 {
            3 => "A2".to_string(),
            4 => "B2".to_string(),
            m => format!("I2({m})"),
        };
    }
    if let Some(&(a, b, m)) = edges.iter().find(|e| e.2 > 3) {
        let at_end = degree(a) == 1 || degree(b) == 1;
        return match (m, at_end) {
            (4, true) => format!("B{k}"),
            (4, false) => format!("F{k}"),
            (5, _) => format!("H{k}"),
            (m, _) => format!("?{k}({m})"),
        };
    }
    let Some(&branch) = comp.iter().find(|&&v| degree(v) == 3) else {
        return format!("A{k}");
    };
    // arm lengths from the branch node
    let mut arms: Vec<usize> = edges
        .iter()
        .filter_map(|e| match (e.0 == branch, e.1 == branch) {
            (true, _) => Some(e.1),
            (_, true) => Some(e.0),
            _ => None,
        })
        .map(|start| {
            let (mut prev, mut cur, mut len) = (branch, start, 1);
            loop {
                let next = edges.iter().find_map(|e| {
                    let other = if e.0 == cur { e.1 } else if e.1 == cur { e.0 } else { return None };
                    (other != prev).then_some(other)
                });
                match next {
                    Some(n) => {
                        prev = cur;
                        cur = n;
                        len += 1;
                    }
                    None => break len,
                }
            }
        })
        .collect();
    arms.sort_unstable();
    match arms.as_slice() {
        [1, 1, _] => format!("D{k}"),
        [1, 2, 2] | [1, 2, 3] | [1, 2, 4] => format!("E{k}"),
        _ => format!("?{k}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::descriptor::CoxeterType;

    fn label(ty: &str, idx: &[usize]) -> String {
        let t: CoxeterType = ty.parse().unwrap();
        iso_type(&t.coxeter_matrix(), GeneratorSubset::from_indices(idx.iter().copied()))
    }

    #[test]
    fn whole_groups_are_named_after_their_type() {
        for (ty, n) in [("A4", 4), ("B3", 3), ("D5", 5), ("E6", 6), ("E7", 7), ("E8", 8), ("F4", 4), ("H3", 3), ("H4", 4)] {
            let all: Vec<usize> = (0..n).collect();
            assert_eq!(label(ty, &all), ty);
        }
        assert_eq!(label("I2:7", &[0, 1]), "I2(7)");
        assert_eq!(label("B2", &[0, 1]), "B2");
    }

    #[test]
    fn proper_subsets() {
        assert_eq!(label("A3", &[]), "1");
        assert_eq!(label("A5", &[0, 2, 3]), "A2xA1");
        assert_eq!(label("E6", &[1, 2, 3, 4]), "D4");
        assert_eq!(label("E6", &[0, 2, 3, 4, 5]), "A5");
        assert_eq!(label("E6", &[0, 1, 2, 3, 4]), "D5");
        assert_eq!(label("F4", &[1, 2, 3]), "B3");
        assert_eq!(label("F4", &[0, 1, 2]), "B3");
        assert_eq!(label("H4", &[0, 1, 3]), "I2(5)xA1");
        assert_eq!(label("D4", &[0, 1]), "A1xA1");
        assert_eq!(label("D5", &[0, 1, 2]), "A3");
    }
}
