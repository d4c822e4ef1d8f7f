use crate::error::{invalid, Result};

/// Closed walk through a tree crossing every edge once in each direction:
/// an Euler circuit of the doubled tree, taken as the depth-first tour from
/// vertex 0 with children in increasing order.
pub fn double_tree_walk(n: usize, edges: &[(usize, usize)]) -> Result<Vec<usize>> {
    if n == 0 {
        return invalid("tree has no vertices");
    }
    if edges.len() + 1 != n {
        return invalid(format!("{} edges on {n} vertices is not a tree", edges.len()));
    }
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        if a >= n || b >= n || a == b {
            return invalid(format!("bad tree edge ({a}, {b})"));
        }
        adj[a].push(b);
        adj[b].push(a);
    }
    for l in &mut adj {
        l.sort_unstable();
    }
    let mut walk = vec![0];
    let mut seen = vec![false; n];
    seen[0] = true;
    // (vertex, next neighbour index)
    let mut stack = vec![(0usize, 0usize)];
    while let Some(&mut (v, ref mut next)) = stack.last_mut() {
        if let Some(&w) = adj[v].get(*next) {
            *next += 1;
            if !seen[w] {
                seen[w] = true;
                walk.push(w);
                stack.push((w, 0));
            }
        } else {
            stack.pop();
            if let Some(&(p, _)) = stack.last() {
                walk.push(p);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return invalid("edges do not form a connected tree");
    }
    Ok(walk)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_and_path() {
        assert_eq!(double_tree_walk(4, &[(0, 1), (0, 2), (0, 3)]).unwrap(), vec![0, 1, 0, 2, 0, 3, 0]);
        assert_eq!(double_tree_walk(3, &[(0, 1), (1, 2)]).unwrap(), vec![0, 1, 2, 1, 0]);
        assert_eq!(double_tree_walk(1, &[]).unwrap(), vec![0]);
    }

    #[test]
    fn rejects_cycles() {
        assert!(double_tree_walk(3, &[(0, 1), (1, 0)]).is_err());
        assert!(double_tree_walk(3, &[(0, 1)]).is_err());
    }
}
