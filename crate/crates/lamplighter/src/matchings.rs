//! Maximum matchings, nullity, and the type-A/type-B classification of
//! rooted trees, plus exact rank-based nullity for arbitrary finite graphs.
//!
//! For a tree the adjacency nullity is |T| - 2 mu(T) where mu is the maximum
//! matching size, and the same identity holds for graphs all of whose cycles
//! have length 2 mod 4 (the Z6 * Z6 clusters). The rank oracle below never
//! touches floating point: it is an integer-preserving sparse elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use crate::animals::AnimalTree;
use crate::error::{Error, Result};
use crate::poly::{Polynomial, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeType {
    /// Some maximum matching leaves the root uncovered.
    A,
    /// Every maximum matching covers the root.
    B,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MatchingInfo {
    /// Maximum matching size mu(T).
    pub mu: u64,
    /// Nullity nu(T) = |T| - 2 mu(T).
    pub nu: u64,
    pub node_type: NodeType,
}

/// Single bottom-up pass: a vertex is type A iff all of its child subtrees
/// are type B (empty slots count as type B), and mu accumulates one extra
/// edge exactly at type-B vertices.
pub fn tree_matching_info(t: &AnimalTree) -> MatchingInfo {
    let n = t.size();
    let mut mu = vec![0u64; n];
    let mut is_a = vec![false; n];
    for id in (0..n as u32).rev() {
        let mut all_children_b = true;
        let mut acc = 0u64;
        for slot in t.slots(id).iter().flatten() {
            acc += mu[*slot as usize];
            if is_a[*slot as usize] {
                all_children_b = false;
            }
        }
        is_a[id as usize] = all_children_b;
        mu[id as usize] = acc + if all_children_b { 0 } else { 1 };
    }
    let root_mu = mu[0];
    MatchingInfo {
        mu: root_mu,
        nu: n as u64 - 2 * root_mu,
        node_type: if is_a[0] { NodeType::A } else { NodeType::B },
    }
}

/// Simple undirected graph on vertices 0..n.
#[derive(Clone, Debug)]
pub struct FiniteGraph {
    n: usize,
    edges: Vec<(u32, u32)>,
}

impl FiniteGraph {
    pub fn new(n: usize, edges: Vec<(u32, u32)>) -> Self {
        let mut norm: Vec<(u32, u32)> = edges
            .into_iter()
            .map(|(a, b)| if a <= b { (a, b) } else { (b, a) })
            .collect();
        norm.sort_unstable();
        norm.dedup();
        assert!(norm.iter().all(|&(a, b)| a != b && (b as usize) < n));
        FiniteGraph { n, edges: norm }
    }

    pub fn from_tree(t: &AnimalTree) -> Self {
        FiniteGraph::new(t.size(), t.edges())
    }

    pub fn path(n: usize) -> Self {
        FiniteGraph::new(n, (1..n as u32).map(|i| (i - 1, i)).collect())
    }

    pub fn cycle(n: usize) -> Self {
        let mut e: Vec<(u32, u32)> = (1..n as u32).map(|i| (i - 1, i)).collect();
        e.push((n as u32 - 1, 0));
        FiniteGraph::new(n, e)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn adjacency_lists(&self) -> Vec<Vec<u32>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(a, b) in &self.edges {
            adj[a as usize].push(b);
            adj[b as usize].push(a);
        }
        adj
    }
}

/// Exact nullity of the 0/1 adjacency matrix over the rationals, by
/// integer-preserving sparse Gaussian elimination with minimum-fill pivoting.
/// Rows are rescaled by their integer content after each update, so the
/// entries stay small on the near-tree graphs this is used on.
pub fn nullity_rank_oracle(g: &FiniteGraph) -> u64 {
    let n = g.n;
    let mut rows: Vec<Option<BTreeMap<u32, BigInt>>> = vec![Some(BTreeMap::new()); n];
    let mut cols: Vec<BTreeSet<u32>> = vec![BTreeSet::new(); n];
    for &(a, b) in &g.edges {
        rows[a as usize]
            .as_mut()
            .unwrap()
            .insert(b, BigInt::one());
        rows[b as usize]
            .as_mut()
            .unwrap()
            .insert(a, BigInt::one());
        cols[b as usize].insert(a);
        cols[a as usize].insert(b);
    }
    let mut rank = 0u64;
    loop {
        // Pivot row: fewest nonzeros among nonempty active rows.
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in rows.iter().enumerate() {
            if let Some(r) = row {
                if !r.is_empty() {
                    let nnz = r.len();
                    if best.map_or(true, |(b, _)| nnz < b) {
                        best = Some((nnz, i));
                        if nnz == 1 {
                            break;
                        }
                    }
                }
            }
        }
        let Some((_, pr)) = best else { break };
        let prow = rows[pr].take().unwrap();
        for (&c, _) in &prow {
            cols[c as usize].remove(&(pr as u32));
        }
        // Pivot column: the one with the fewest other rows to update.
        let (&pc, _) = prow
            .iter()
            .min_by_key(|(&c, _)| cols[c as usize].len())
            .unwrap();
        let pval = prow[&pc].clone();
        let victims: Vec<u32> = cols[pc as usize].iter().cloned().collect();
        for v in victims {
            let vi = v as usize;
            let Some(mut vrow) = rows[vi].take() else {
                continue;
            };
            let factor = vrow[&pc].clone();
            // row_v <- pval * row_v - factor * row_p  (kills column pc)
            for (&c, pv) in &prow {
                let entry = vrow.remove(&c);
                let newval = match entry {
                    Some(old) => &old * &pval - &factor * pv,
                    None => -(&factor * pv),
                };
                if newval.is_zero() {
                    cols[c as usize].remove(&v);
                } else {
                    cols[c as usize].insert(v);
                    vrow.insert(c, newval);
                }
            }
            for (c, val) in vrow.iter_mut() {
                if !prow.contains_key(c) {
                    *val = &*val * &pval;
                    debug_assert!(cols[*c as usize].contains(&v));
                }
            }
            // Strip the integer content to keep entries small.
            let mut content = BigInt::zero();
            for val in vrow.values() {
                content = content.gcd(val);
                if content.is_one() {
                    break;
                }
            }
            if content > BigInt::one() {
                for val in vrow.values_mut() {
                    *val = &*val / &content;
                }
            }
            rows[vi] = Some(vrow);
        }
        rank += 1;
    }
    n as u64 - rank
}

/// Exact matching polynomial sum_j (-1)^j m(G,j) x^(n-2j), by the
/// delete-edge / delete-endpoints recursion with memoization on the
/// canonical remaining edge set.
pub fn matching_polynomial(g: &FiniteGraph) -> Result<Polynomial> {
    const CAP: usize = 24;
    if g.n > CAP {
        return Err(Error::GraphSizeCap {
            what: "matching_polynomial",
            limit: CAP,
            got: g.n,
        });
    }
    let mut memo: HashMap<(Vec<(u32, u32)>, usize), Vec<BigInt>> = HashMap::new();
    // Returns coefficients of x^0..x^nverts.
    fn rec(
        edges: &[(u32, u32)],
        nverts: usize,
        memo: &mut HashMap<(Vec<(u32, u32)>, usize), Vec<BigInt>>,
    ) -> Vec<BigInt> {
        if edges.is_empty() {
            let mut c = vec![BigInt::zero(); nverts + 1];
            c[nverts] = BigInt::one();
            return c;
        }
        let key = (edges.to_vec(), nverts);
        if let Some(hit) = memo.get(&key) {
            return hit.clone();
        }
        let (u, v) = edges[0];
        let without_edge: Vec<(u32, u32)> = edges[1..].to_vec();
        let a = rec(&without_edge, nverts, memo);
        let without_ends: Vec<(u32, u32)> = edges[1..]
            .iter()
            .filter(|&&(x, y)| x != u && x != v && y != u && y != v)
            .cloned()
            .collect();
        let b = rec(&without_ends, nverts - 2, memo);
        let mut out = a;
        for (i, coef) in b.iter().enumerate() {
            out[i] -= coef;
        }
        memo.insert(key, out.clone());
        out
    }
    let coeffs = rec(&g.edges, g.n, &mut memo);
    Ok(Polynomial::new(
        coeffs.into_iter().map(Rat::from_integer).collect(),
    ))
}

/// Exact characteristic polynomial det(x I - A) of the adjacency matrix,
/// via fraction-free (Bareiss) determinants at n+1 integer points and
/// Lagrange interpolation over the rationals.
pub fn characteristic_polynomial(g: &FiniteGraph) -> Result<Polynomial> {
    const CAP: usize = 64;
    if g.n > CAP {
        return Err(Error::GraphSizeCap {
            what: "characteristic_polynomial",
            limit: CAP,
            got: g.n,
        });
    }
    let n = g.n;
    if n == 0 {
        return Ok(Polynomial::one());
    }
    let adj = {
        let mut m = vec![vec![BigInt::zero(); n]; n];
        for &(a, b) in &g.edges {
            m[a as usize][b as usize] = BigInt::one();
            m[b as usize][a as usize] = BigInt::one();
        }
        m
    };
    let xs: Vec<i64> = (0..=n as i64).collect();
    let ys: Vec<BigInt> = xs
        .iter()
        .map(|&x| {
            let mut m = adj.clone();
            for (i, row) in m.iter_mut().enumerate() {
                row[i] = BigInt::from(x) - &row[i];
                for (j, v) in row.iter_mut().enumerate() {
                    if j != i {
                        *v = -v.clone();
                    }
                }
            }
            bareiss_determinant(m)
        })
        .collect();
    Ok(lagrange_interpolate(&xs, &ys))
}

/// Fraction-free determinant of an integer matrix (one-step Bareiss).
fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = 1i8;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero());
                m[i][j] = q;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

fn lagrange_interpolate(xs: &[i64], ys: &[BigInt]) -> Polynomial {
    let mut acc = Polynomial::zero();
    for (i, &xi) in xs.iter().enumerate() {
        let mut num = Polynomial::one();
        let mut den = Rat::one();
        for (j, &xj) in xs.iter().enumerate() {
            if i != j {
                num = &num * &Polynomial::from_i64(&[-xj, 1]);
                den *= Rat::from_integer(BigInt::from(xi - xj));
            }
        }
        let weight = Rat::from_integer(ys[i].clone()) / den;
        acc = &acc + &num.scale(&weight);
    }
    acc
}

/// Maximum matching size by exhaustive bitmask recursion with memoization.
/// Exact for any graph; capped to keep the state space desk sized.
pub fn max_matching_exhaustive(g: &FiniteGraph) -> Result<u64> {
    const CAP: usize = 20;
    if g.n > CAP {
        return Err(Error::GraphSizeCap {
            what: "max_matching_exhaustive",
            limit: CAP,
            got: g.n,
        });
    }
    let adj = g.adjacency_lists();
    let full = if g.n == 32 { u32::MAX } else { (1u32 << g.n) - 1 };
    Ok(mu_of_mask(full, &adj, &mut HashMap::new()))
}

fn mu_of_mask(mask: u32, adj: &[Vec<u32>], memo: &mut HashMap<u32, u64>) -> u64 {
    if mask == 0 {
        return 0;
    }
    if let Some(&hit) = memo.get(&mask) {
        return hit;
    }
    let v = mask.trailing_zeros();
    let rest = mask & !(1 << v);
    let mut best = mu_of_mask(rest, adj, memo);
    for &u in &adj[v as usize] {
        if rest & (1 << u) != 0 {
            best = best.max(1 + mu_of_mask(rest & !(1 << u), adj, memo));
        }
    }
    memo.insert(mask, best);
    best
}

/// Does some maximum matching leave `v` uncovered? Equivalent to
/// mu(G - v) == mu(G), checked exhaustively.
pub fn has_max_matching_avoiding(g: &FiniteGraph, v: u32) -> Result<bool> {
    const CAP: usize = 20;
    if g.n > CAP {
        return Err(Error::GraphSizeCap {
            what: "has_max_matching_avoiding",
            limit: CAP,
            got: g.n,
        });
    }
    let adj = g.adjacency_lists();
    let full = (1u32 << g.n) - 1;
    let mut memo = HashMap::new();
    let with_v = mu_of_mask(full, &adj, &mut memo);
    let without_v = mu_of_mask(full & !(1 << v), &adj, &mut memo);
    Ok(with_v == without_v)
}

/// Two-color the graph (0/1 per vertex) or report an odd cycle.
pub fn bipartite_classes(g: &FiniteGraph) -> Result<Vec<u8>> {
    let adj = g.adjacency_lists();
    let mut color = vec![u8::MAX; g.n];
    for start in 0..g.n {
        if color[start] != u8::MAX {
            continue;
        }
        color[start] = 0;
        let mut queue = VecDeque::from([start as u32]);
        while let Some(v) = queue.pop_front() {
            for &u in &adj[v as usize] {
                if color[u as usize] == u8::MAX {
                    color[u as usize] = 1 - color[v as usize];
                    queue.push_back(u);
                } else if color[u as usize] == color[v as usize] {
                    return Err(Error::NotBipartite { witness: u as usize });
                }
            }
        }
    }
    Ok(color)
}

/// Maximum matching on a bipartite graph by Hopcroft-Karp. Fails on
/// non-bipartite input.
pub fn max_matching_bipartite(g: &FiniteGraph) -> Result<u64> {
    let color = bipartite_classes(g)?;
    let adj = g.adjacency_lists();
    let left: Vec<u32> = (0..g.n as u32).filter(|&v| color[v as usize] == 0).collect();
    let mut match_of = vec![u32::MAX; g.n];
    let mut matched = 0u64;
    loop {
        // BFS layering from free left vertices.
        let mut dist = vec![u32::MAX; g.n];
        let mut queue = VecDeque::new();
        for &v in &left {
            if match_of[v as usize] == u32::MAX {
                dist[v as usize] = 0;
                queue.push_back(v);
            }
        }
        let mut found_augmenting = false;
        while let Some(v) = queue.pop_front() {
            for &u in &adj[v as usize] {
                let m = match_of[u as usize];
                if m == u32::MAX {
                    found_augmenting = true;
                } else if dist[m as usize] == u32::MAX {
                    dist[m as usize] = dist[v as usize] + 1;
                    queue.push_back(m);
                }
            }
        }
        if !found_augmenting {
            break;
        }
        // DFS along the layering.
        fn try_augment(
            v: u32,
            adj: &[Vec<u32>],
            dist: &mut [u32],
            match_of: &mut [u32],
        ) -> bool {
            for i in 0..adj[v as usize].len() {
                let u = adj[v as usize][i];
                let m = match_of[u as usize];
                let ok = if m == u32::MAX {
                    true
                } else if dist[m as usize] == dist[v as usize] + 1 {
                    try_augment(m, adj, dist, match_of)
                } else {
                    false
                };
                if ok {
                    match_of[u as usize] = v;
                    match_of[v as usize] = u;
                    return true;
                }
            }
            dist[v as usize] = u32::MAX;
            false
        }
        for &v in &left {
            if match_of[v as usize] == u32::MAX
                && dist[v as usize] == 0
                && try_augment(v, &adj, &mut dist, &mut match_of)
            {
                matched += 1;
            }
        }
    }
    Ok(matched)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::animals::{animals_of_size, for_each_animal, AnimalTree};

    #[test]
    fn single_vertex_is_type_a() {
        let info = tree_matching_info(&AnimalTree::root_only(3));
        assert_eq!(
            info,
            MatchingInfo {
                mu: 0,
                nu: 1,
                node_type: NodeType::A
            }
        );
    }

    #[test]
    fn two_vertex_path_is_type_b() {
        let t = &animals_of_size(3, 2)[0];
        let info = tree_matching_info(t);
        assert_eq!(info.mu, 1);
        assert_eq!(info.nu, 0);
        assert_eq!(info.node_type, NodeType::B);
    }

    #[test]
    fn star_with_three_leaves() {
        let star = animals_of_size(3, 4)
            .into_iter()
            .find(|t| t.slots(0).iter().filter(|s| s.is_some()).count() == 3)
            .unwrap();
        let info = tree_matching_info(&star);
        assert_eq!(info.mu, 1);
        assert_eq!(info.nu, 2);
        assert_eq!(info.node_type, NodeType::B);
    }

    #[test]
    fn rank_oracle_examples() {
        assert_eq!(nullity_rank_oracle(&FiniteGraph::new(1, vec![])), 1);
        assert_eq!(nullity_rank_oracle(&FiniteGraph::cycle(4)), 2);
        // the 6-cycle has eigenvalues +-2, +-1, +-1: no zeros
        assert_eq!(nullity_rank_oracle(&FiniteGraph::cycle(6)), 0);
    }

    #[test]
    fn matching_polynomial_examples() {
        assert_eq!(
            matching_polynomial(&FiniteGraph::path(2)).unwrap(),
            Polynomial::from_i64(&[-1, 0, 1])
        );
        assert_eq!(
            matching_polynomial(&FiniteGraph::path(3)).unwrap(),
            Polynomial::from_i64(&[0, -2, 0, 1])
        );
        assert_eq!(
            matching_polynomial(&FiniteGraph::cycle(3)).unwrap(),
            Polynomial::from_i64(&[0, -3, 0, 1])
        );
    }

    #[test]
    fn characteristic_polynomial_examples() {
        assert_eq!(
            characteristic_polynomial(&FiniteGraph::new(1, vec![])).unwrap(),
            Polynomial::from_i64(&[0, 1])
        );
        assert_eq!(
            characteristic_polynomial(&FiniteGraph::path(2)).unwrap(),
            Polynomial::from_i64(&[-1, 0, 1])
        );
        assert_eq!(
            characteristic_polynomial(&FiniteGraph::cycle(4)).unwrap(),
            Polynomial::from_i64(&[0, 0, -4, 0, 1])
        );
        // C6: (t^2 - 4)(t^2 - 1)^2 = t^6 - 6 t^4 + 9 t^2 - 4
        assert_eq!(
            characteristic_polynomial(&FiniteGraph::cycle(6)).unwrap(),
            Polynomial::from_i64(&[-4, 0, 9, 0, -6, 0, 1])
        );
    }

    #[test]
    fn char_poly_constant_term_vanishing_matches_nullity() {
        for g in [
            FiniteGraph::path(4),
            FiniteGraph::path(5),
            FiniteGraph::cycle(4),
            FiniteGraph::cycle(5),
            FiniteGraph::cycle(6),
        ] {
            let cp = characteristic_polynomial(&g).unwrap();
            let nullity = cp
                .coeffs()
                .iter()
                .take_while(|c| num_traits::Zero::is_zero(*c))
                .count() as u64;
            assert_eq!(nullity, nullity_rank_oracle(&g));
        }
    }

    #[test]
    fn tree_info_agrees_with_rank_oracle_small() {
        for size in 1..=6usize {
            for_each_animal(3, size, |t| {
                let info = tree_matching_info(t);
                let g = FiniteGraph::from_tree(t);
                assert_eq!(info.nu, nullity_rank_oracle(&g));
                assert_eq!(info.mu, max_matching_exhaustive(&g).unwrap());
                let type_a = has_max_matching_avoiding(&g, 0).unwrap();
                assert_eq!(info.node_type == NodeType::A, type_a);
                assert_eq!(info.nu % 2, (size % 2) as u64);
            });
        }
    }

    #[test]
    fn hopcroft_karp_agrees_with_exhaustive() {
        for g in [
            FiniteGraph::path(7),
            FiniteGraph::cycle(6),
            FiniteGraph::cycle(8),
            FiniteGraph::new(6, vec![(0, 1), (0, 3), (2, 3), (2, 5), (4, 5), (1, 4), (0, 5)]),
        ] {
            if bipartite_classes(&g).is_ok() {
                assert_eq!(
                    max_matching_bipartite(&g).unwrap(),
                    max_matching_exhaustive(&g).unwrap()
                );
            }
        }
    }

    #[test]
    fn odd_cycle_is_rejected() {
        assert!(matches!(
            max_matching_bipartite(&FiniteGraph::cycle(5)),
            Err(Error::NotBipartite { .. })
        ));
    }

    proptest::proptest! {
        #[test]
        fn random_graph_rank_consistency(edges in proptest::collection::vec((0u32..8, 0u32..8), 0..14)) {
            let edges: Vec<(u32,u32)> = edges.into_iter().filter(|(a,b)| a != b).collect();
            let g = FiniteGraph::new(8, edges);
            // nullity from the characteristic polynomial equals the rank oracle
            let cp = characteristic_polynomial(&g).unwrap();
            let nullity = cp.coeffs().iter().take_while(|c| num_traits::Zero::is_zero(*c)).count() as u64;
            proptest::prop_assert_eq!(nullity, nullity_rank_oracle(&g));
            // bipartite graphs: Hopcroft-Karp equals exhaustive search
            if bipartite_classes(&g).is_ok() {
                proptest::prop_assert_eq!(
                    max_matching_bipartite(&g).unwrap(),
                    max_matching_exhaustive(&g).unwrap()
                );
            }
        }
    }
}
