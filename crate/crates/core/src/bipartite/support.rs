use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use super::matching::{has_matching_on, max_matching};
use super::{BipartiteGraph, Matroid};
use crate::{subsets_of_size, Error, IndexSet, Result, MAX_GROUND_SET};

/// `|J_I(Σ)| ≥ n − d + |I|` for every nonempty `I ⊆ [d]`.
pub fn hall_surplus_check(g: &BipartiteGraph) -> bool {
    let (d, n) = (g.left_size(), g.right_size());
    IndexSet::full(d).nonempty_subsets().all(|rows| g.rows_neighbourhood(rows).len() + d >= n + rows.len())
}

/// The surplus condition together with `|J_i(Σ)| = n − d + 1` for every row.
pub fn is_support_set(g: &BipartiteGraph) -> bool {
    let (d, n) = (g.left_size(), g.right_size());
    d <= n && (0..d).all(|i| g.row(i).len() == n - d + 1) && hall_surplus_check(g)
}

/// Every support set on `[d] ⊔ [n]`, sorted by edge list.
pub fn enumerate_support_sets(d: usize, n: usize, budget: u64) -> Result<Vec<BipartiteGraph>> {
    if d > n {
        return Ok(Vec::new());
    }
    let choices = subsets_of_size(n, n - d + 1);
    let total = (choices.len() as u64).checked_pow(d as u32);
    if total.is_none_or(|t| t > budget) {
        return Err(Error::BudgetExceeded { what: "support set enumeration", budget });
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; d];
    loop {
        let g = BipartiteGraph::from_rows(n, idx.iter().map(|&k| choices[k]).collect());
        if hall_surplus_check(&g) {
            out.push(g);
        }
        // odometer over the row choices
        let mut pos = d;
        loop {
            if pos == 0 {
                out.sort();
                return Ok(out);
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < choices.len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// `M(G)`: the `d`-subsets of columns that `G` matches to all rows.
pub fn transversal_matroid(g: &BipartiteGraph) -> Result<Matroid> {
    let (d, n) = (g.left_size(), g.right_size());
    if n > MAX_GROUND_SET {
        return Err(Error::TooLarge);
    }
    let bases = subsets_of_size(n, d).into_iter().filter(|&b| has_matching_on(g, b)).collect();
    Ok(Matroid::from_bases(n, d, bases))
}

/// `min_I (|S ∩ J_I| + d − |I|)` over all `I ⊆ [d]`.
pub fn transversal_rank(g: &BipartiteGraph, s: IndexSet) -> usize {
    let d = g.left_size();
    core::iter::once(IndexSet::EMPTY)
        .chain(IndexSet::full(d).nonempty_subsets())
        .map(|rows| s.intersection(g.rows_neighbourhood(rows)).len() + d - rows.len())
        .min()
        .expect("at least the empty set")
}

/// Size of a maximum matching between `S` and `[d]`.
pub fn transversal_rank_by_matching(g: &BipartiteGraph, s: IndexSet) -> usize {
    max_matching(g, IndexSet::full(g.left_size()), s)
}

/// `|J_I(G)| ≥ |I| + 1` for every nonempty `I ⊆ [d]`.
pub fn dragon_condition(g: &BipartiteGraph) -> bool {
    IndexSet::full(g.left_size()).nonempty_subsets().all(|rows| g.rows_neighbourhood(rows).len() > rows.len())
}

/// `|I_{J'}(G)| ≥ |J'| + 1` for every nonempty `J' ⊆ J`.
pub fn colwise_dragon_condition(g: &BipartiteGraph, cols: IndexSet) -> bool {
    cols.nonempty_subsets().all(|sub| g.columns_neighbourhood(sub).len() > sub.len())
}

/// The first Betti number `|E| − |V| + #components`, counting only
/// non-isolated vertices.
pub fn support_face_dimension(g: &BipartiteGraph) -> i64 {
    let d = g.left_size();
    let (mut vertices, mut comps) = (0i64, 0i64);
    for c in g.components() {
        let isolated = c.len() == 1 && {
            let v = c[0];
            if v < d {
                g.row(v).is_empty()
            } else {
                g.column(v - d).is_empty()
            }
        };
        if !isolated {
            vertices += c.len() as i64;
            comps += 1;
        }
    }
    g.edge_count() as i64 - vertices + comps
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(k: usize) -> Self {
        UnionFind((0..k).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        self.0[x] = r;
        r
    }

    /// Joins the classes of `a` and `b`; false if they were already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra] = rb;
        true
    }
}

/// A spanning tree of `G` in which every left vertex has degree at least 2.
///
/// Picks two neighbours for every row so that the chosen pairs form a forest
/// on the columns (a common independent set of a partition matroid and a
/// graphic matroid, found by matroid intersection), then completes the forest
/// greedily with further edges of `G`.
pub fn spanning_tree_no_left_leaves(g: &BipartiteGraph) -> Result<BipartiteGraph> {
    let (d, n) = (g.left_size(), g.right_size());
    if d >= n {
        return Err(Error::Precondition("needs d < n"));
    }
    if !g.is_connected() {
        return Err(Error::Precondition("graph must be connected"));
    }
    let full_rows = IndexSet::full(d);
    for (i, j) in g.edges() {
        let rest = max_matching(g, full_rows.without(i), IndexSet::full(n).without(j));
        if rest + 1 != d {
            return Err(Error::Precondition("every edge must lie in a matching"));
        }
    }

    let mut ground: Vec<(usize, usize, usize)> = Vec::new();
    for i in 0..d {
        for pair in subsets_of_size(n, 2) {
            if pair.is_subset(g.row(i)) {
                let v = pair.to_vec();
                ground.push((i, v[0], v[1]));
            }
        }
    }
    let chosen = matroid_intersection(&ground, d, n);
    if chosen.len() != d {
        return Err(Error::Precondition("no spanning tree without left leaves"));
    }

    let mut tree = BipartiteGraph::empty(d, n);
    let mut uf = UnionFind::new(d + n);
    for &k in &chosen {
        let (i, a, b) = ground[k];
        tree.insert(i, a);
        tree.insert(i, b);
        uf.union(i, d + a);
        uf.union(i, d + b);
    }
    for (i, j) in g.edges() {
        if uf.union(i, d + j) {
            tree.insert(i, j);
        }
    }
    debug_assert!(tree.is_tree() && (0..d).all(|i| tree.row(i).len() >= 2));
    Ok(tree)
}

/// Largest set of pairs with at most one pair per row whose pairs form a
/// forest on the columns.
fn matroid_intersection(ground: &[(usize, usize, usize)], d: usize, n: usize) -> Vec<usize> {
    let indep_rows = |set: &[usize]| {
        let mut seen = IndexSet::EMPTY;
        set.iter().all(|&k| {
            let i = ground[k].0;
            let fresh = !seen.contains(i);
            seen.insert(i);
            fresh
        })
    };
    let indep_forest = |set: &[usize]| {
        let mut uf = UnionFind::new(n);
        set.iter().all(|&k| uf.union(ground[k].1, ground[k].2))
    };
    let swap = |set: &[usize], out: Option<usize>, inn: usize| {
        let mut s: Vec<usize> = set.iter().copied().filter(|&k| Some(k) != out).collect();
        s.push(inn);
        s
    };

    let mut current: Vec<usize> = Vec::new();
    while current.len() < d {
        let outside: Vec<usize> = (0..ground.len()).filter(|k| !current.contains(k)).collect();
        let sources: Vec<usize> = outside.iter().copied().filter(|&x| indep_rows(&swap(&current, None, x))).collect();
        let sinks: Vec<usize> = outside.iter().copied().filter(|&x| indep_forest(&swap(&current, None, x))).collect();

        // breadth-first search in the exchange graph
        let mut prev: Vec<Option<usize>> = vec![None; ground.len()];
        let mut visited = vec![false; ground.len()];
        let mut queue: VecDeque<usize> = VecDeque::new();
        for &s in &sources {
            visited[s] = true;
            queue.push_back(s);
        }
        let mut end = None;
        while let Some(v) = queue.pop_front() {
            if sinks.contains(&v) && !current.contains(&v) {
                end = Some(v);
                break;
            }
            let next: Vec<usize> = if current.contains(&v) {
                // y → x when I − y + x stays independent for the row matroid
                outside.iter().copied().filter(|&x| indep_rows(&swap(&current, Some(v), x))).collect()
            } else {
                // x → y when I − y + x stays independent for the forest matroid
                current.iter().copied().filter(|&y| indep_forest(&swap(&current, Some(y), v))).collect()
            };
            for u in next {
                if !visited[u] {
                    visited[u] = true;
                    prev[u] = Some(v);
                    queue.push_back(u);
                }
            }
        }
        let Some(mut v) = end else { break };
        loop {
            if let Some(pos) = current.iter().position(|&k| k == v) {
                current.remove(pos);
            } else {
                current.push(v);
            }
            match prev[v] {
                Some(p) => v = p,
                None => break,
            }
        }
    }
    current.sort_unstable();
    current
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bipartite::fixtures::{labelled_support, graph, set};
    use crate::DEFAULT_BUDGET;
    use proptest::prelude::*;

    #[test]
    fn surplus_examples() {
        assert!(hall_surplus_check(&labelled_support()));
        assert!(hall_surplus_check(&BipartiteGraph::full(3, 5)));
        assert!(!hall_surplus_check(&graph(2, 3, &[(1, 1), (2, 1), (1, 2), (2, 2)])));
    }

    #[test]
    fn support_set_examples() {
        assert!(is_support_set(&labelled_support()));
        assert!(is_support_set(&graph(2, 3, &[(1, 1), (2, 2), (1, 3), (2, 3)])));
        assert!(!is_support_set(&BipartiteGraph::full(2, 3)));
    }

    #[test]
    fn enumeration_small_cases() {
        let all = enumerate_support_sets(2, 3, DEFAULT_BUDGET).unwrap();
        assert_eq!(all.len(), 6);
        for g in &all {
            assert!(g.is_tree());
            assert!((0..2).all(|i| g.row(i).len() == 2));
        }
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        for n in 1..6 {
            let one = enumerate_support_sets(1, n, DEFAULT_BUDGET).unwrap();
            assert_eq!(one, vec![BipartiteGraph::full(1, n)]);
        }
        assert!(matches!(enumerate_support_sets(4, 8, 10), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn enumeration_matches_brute_force_over_edge_sets() {
        // every graph with d(n − d + 1) edges on [2] × [4], filtered by definition
        let (d, n) = (2, 4);
        let mut expected = Vec::new();
        for mask in 0u64..(1 << (d * n)) {
            if mask.count_ones() as usize != d * (n - d + 1) {
                continue;
            }
            let edges: Vec<(usize, usize)> =
                (0..d * n).filter(|k| mask >> k & 1 == 1).map(|k| (k / n, k % n)).collect();
            let g = BipartiteGraph::from_edges(d, n, &edges).unwrap();
            if transversal_matroid(&g).unwrap() == Matroid::uniform(d, n) {
                expected.push(g);
            }
        }
        expected.sort();
        assert_eq!(enumerate_support_sets(d, n, DEFAULT_BUDGET).unwrap(), expected);
    }

    #[test]
    fn transversal_examples() {
        assert_eq!(transversal_matroid(&labelled_support()).unwrap(), Matroid::uniform(3, 5));
        let g = graph(2, 4, &[(1, 1), (1, 2), (2, 1), (2, 2), (2, 3), (2, 4)]);
        let m = transversal_matroid(&g).unwrap();
        let expect: Vec<IndexSet> = [[1, 2], [1, 3], [1, 4], [2, 3], [2, 4]].iter().map(|b| set(b)).collect();
        assert_eq!(m.bases(), expect.as_slice());
        assert!(transversal_matroid(&graph(2, 2, &[(1, 1), (2, 1)])).unwrap().is_empty());
    }

    #[test]
    fn rank_examples() {
        let g = graph(2, 4, &[(1, 1), (1, 2), (2, 1), (2, 2), (2, 3), (2, 4)]);
        assert_eq!(transversal_rank(&g, set(&[3, 4])), 1);
        assert_eq!(transversal_rank(&g, IndexSet::EMPTY), 0);
        assert_eq!(transversal_rank(&labelled_support(), set(&[1, 2, 3])), 3);
    }

    #[test]
    fn dragon_examples() {
        assert!(dragon_condition(&graph(2, 4, &[(2, 1), (2, 2), (1, 3), (1, 4)])));
        assert!(!dragon_condition(&graph(2, 4, &[(1, 1), (1, 2), (1, 3), (1, 4)])));
        let vertex = graph(3, 4, &[(1, 1), (1, 2), (2, 2), (2, 3), (3, 3), (3, 4)]);
        assert!(dragon_condition(&vertex));
        assert!(colwise_dragon_condition(&vertex, set(&[2, 3])));
        assert!(!colwise_dragon_condition(&vertex, set(&[1])));
        assert!(colwise_dragon_condition(&vertex, IndexSet::EMPTY));
    }

    fn has_no_left_leaves(t: &BipartiteGraph) -> bool {
        t.is_tree() && (0..t.left_size()).all(|i| t.row(i).len() >= 2)
    }

    #[test]
    fn spanning_tree_examples() {
        let path = graph(2, 3, &[(1, 1), (1, 2), (2, 2), (2, 3)]);
        assert_eq!(spanning_tree_no_left_leaves(&path).unwrap(), path);

        let full = BipartiteGraph::full(2, 3);
        let t = spanning_tree_no_left_leaves(&full).unwrap();
        assert!(has_no_left_leaves(&t) && t.is_subgraph_of(&full));
        // oracle: some spanning tree of the full graph qualifies
        let qualifying = (0u64..64)
            .filter(|m| m.count_ones() == 4)
            .map(|m| {
                let e: Vec<_> = (0..6).filter(|k| m >> k & 1 == 1).map(|k| (k / 3, k % 3)).collect();
                BipartiteGraph::from_edges(2, 3, &e).unwrap()
            })
            .filter(has_no_left_leaves)
            .count();
        assert!(qualifying > 0);

        let g = labelled_support();
        let t = spanning_tree_no_left_leaves(&g).unwrap();
        assert_eq!(t.edge_count(), 7);
        assert!(has_no_left_leaves(&t) && t.is_subgraph_of(&g));
    }

    #[test]
    fn spanning_tree_preconditions() {
        assert!(spanning_tree_no_left_leaves(&BipartiteGraph::full(2, 2)).is_err());
        let disconnected = graph(2, 4, &[(1, 1), (1, 2), (2, 3), (2, 4)]);
        assert!(spanning_tree_no_left_leaves(&disconnected).is_err());
        // edge (1,1) lies in no matching: column 1 is row 1's only... row 2 needs it
        let bad = graph(2, 3, &[(1, 1), (1, 2), (1, 3), (2, 1)]);
        assert!(spanning_tree_no_left_leaves(&bad).is_err());
    }

    #[test]
    fn betti_examples() {
        assert_eq!(support_face_dimension(&labelled_support()), 2);
        let pointed = graph(2, 4, &[(1, 1), (2, 2), (1, 3), (2, 3), (1, 4), (2, 4)]);
        assert_eq!(support_face_dimension(&pointed), 1);
        assert_eq!(support_face_dimension(&graph(2, 3, &[(1, 1), (1, 2), (2, 2), (2, 3)])), 0);
        // isolated vertices are ignored
        assert_eq!(support_face_dimension(&graph(2, 5, &[(1, 1), (1, 2), (2, 2), (2, 3)])), 0);
    }

    #[test]
    fn betti_census() {
        for (d, n) in [(2, 4), (2, 5), (3, 4), (3, 5), (3, 6)] {
            for g in enumerate_support_sets(d, n, DEFAULT_BUDGET).unwrap() {
                assert_eq!(support_face_dimension(&g), ((d - 1) * (n - d - 1)) as i64);
                assert_eq!(transversal_matroid(&g).unwrap(), Matroid::uniform(d, n));
                let t = spanning_tree_no_left_leaves(&g).unwrap();
                assert!(has_no_left_leaves(&t) && t.is_subgraph_of(&g));
            }
        }
    }

    fn random_graph() -> impl Strategy<Value = (BipartiteGraph, IndexSet)> {
        (1usize..=4, 1usize..=7).prop_flat_map(|(d, n)| {
            (proptest::collection::vec(proptest::bool::weighted(0.5), d * n), 0u64..(1 << n)).prop_map(
                move |(bits, s)| {
                    let e: Vec<_> = (0..d * n).filter(|&k| bits[k]).map(|k| (k / n, k % n)).collect();
                    (BipartiteGraph::from_edges(d, n, &e).unwrap(), IndexSet::from_bits(s))
                },
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]

        #[test]
        fn rank_formula_matches_matching((g, s) in random_graph()) {
            prop_assert_eq!(transversal_rank(&g, s), transversal_rank_by_matching(&g, s));
            let m = transversal_matroid(&g).unwrap();
            if !m.is_empty() {
                prop_assert_eq!(m.rank_of(s), transversal_rank(&g, s));
            }
        }

        #[test]
        fn surplus_iff_uniform((g, _) in random_graph()) {
            let (d, n) = (g.left_size(), g.right_size());
            prop_assume!(d <= n);
            let uniform = transversal_matroid(&g).unwrap() == Matroid::uniform(d, n);
            prop_assert_eq!(hall_surplus_check(&g), uniform);
        }
    }
}
