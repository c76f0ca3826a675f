//! Lattice animals of the (k+1)-regular tree: rooted finite subtrees
//! containing the identity, enumerated as ordered slot-trees.
//!
//! Animals are vertex subsets of the Cayley graph, so generator directions
//! distinguish children: the root carries k+1 ordered slots (one per
//! generator direction), every other vertex carries k (the parent direction
//! is not a slot). Two animals occupying different vertex subsets are
//! distinct even when they are isomorphic as abstract trees.
//!
//! The canonical text encoding used by the CLI `enumerate` subcommand is
//!
//! ```text
//! animal := "0"                      (empty animal)
//!         | node
//! node   := "(" slot{j} ")"          (j = k+1 at the root, k below)
//! slot   := "0"                      (empty direction)
//!         | "1" node                 (occupied direction)
//! ```
//!
//! Enumeration is grouped by size; within a size, `animals_of_size` sorts by
//! this encoding, which gives a portable deterministic stream.

use num_traits::One;

use crate::error::{Error, Result};
use crate::poly::Rat;

/// A rooted ordered tree stored as an arena. `nodes[i]` lists the ordered
/// child slots of vertex i (node 0 is the root); children always have larger
/// indices than their parent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnimalTree {
    k: u32,
    root_slots: u32,
    nodes: Vec<Vec<Option<u32>>>,
}

impl AnimalTree {
    fn with_root(k: u32, root_slots: u32) -> Self {
        AnimalTree {
            k,
            root_slots,
            nodes: vec![vec![None; root_slots as usize]],
        }
    }

    /// Single-vertex animal (root only, k+1 empty slots).
    pub fn root_only(k: u32) -> Self {
        Self::with_root(k, k + 1)
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Number of vertices |T|.
    pub fn size(&self) -> usize {
        self.nodes.len()
    }

    /// True for full animals (root degree up to k+1); false for the k-ary
    /// branch trees used by the generating-function oracles.
    pub fn is_full_animal(&self) -> bool {
        self.root_slots == self.k + 1
    }

    pub fn slots(&self, node: u32) -> &[Option<u32>] {
        &self.nodes[node as usize]
    }

    fn add_child(&mut self, parent: u32, slot: usize) -> u32 {
        let id = self.nodes.len() as u32;
        self.nodes.push(vec![None; self.k as usize]);
        self.nodes[parent as usize][slot] = Some(id);
        id
    }

    fn remove_last_child(&mut self, parent: u32, slot: usize) {
        self.nodes.pop();
        self.nodes[parent as usize][slot] = None;
    }

    /// Edges (parent, child) in arena order.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::with_capacity(self.size().saturating_sub(1));
        for (i, slots) in self.nodes.iter().enumerate() {
            for s in slots.iter().flatten() {
                out.push((i as u32, *s));
            }
        }
        out
    }

    /// Canonical slot-string encoding (see module docs).
    pub fn canonical_string(&self) -> String {
        let mut out = String::with_capacity(self.size() * 4);
        self.write_node(0, &mut out);
        out
    }

    fn write_node(&self, node: u32, out: &mut String) {
        out.push('(');
        for slot in &self.nodes[node as usize] {
            match slot {
                None => out.push('0'),
                Some(c) => {
                    out.push('1');
                    self.write_node(*c, out);
                }
            }
        }
        out.push(')');
    }

    /// Number of empty slots, which is exactly the number of Cayley-tree
    /// vertices adjacent to the animal but outside it.
    pub fn boundary_by_counting(&self) -> u64 {
        self.nodes
            .iter()
            .map(|slots| slots.iter().filter(|s| s.is_none()).count() as u64)
            .sum()
    }
}

/// An animal: either empty or a rooted subtree containing the root vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Animal {
    /// The empty animal. Its boundary is the root vertex alone (size 1) and
    /// its normalized kernel dimension counts as 1.
    Empty,
    Tree(AnimalTree),
}

impl Animal {
    pub fn size(&self) -> usize {
        match self {
            Animal::Empty => 0,
            Animal::Tree(t) => t.size(),
        }
    }

    pub fn canonical_string(&self) -> String {
        match self {
            Animal::Empty => "0".to_string(),
            Animal::Tree(t) => t.canonical_string(),
        }
    }
}

/// Boundary size |dT| = 2 + (k-1)|T| for nonempty animals, 1 for the empty
/// animal.
pub fn boundary_size(animal: &Animal, k: u32) -> u64 {
    match animal {
        Animal::Empty => 1,
        Animal::Tree(t) => {
            debug_assert_eq!(t.k(), k);
            2 + (k as u64 - 1) * t.size() as u64
        }
    }
}

/// Probability p^|T| (1-p)^|dT| for the animal to occur as the percolation
/// cluster at the root, exactly.
pub fn animal_probability(animal: &Animal, k: u32, p: &Rat) -> Rat {
    let q = Rat::one() - p;
    let n = animal.size();
    let b = boundary_size(animal, k);
    p.pow(n as i32) * q.pow(b as i32)
}

/// DFS enumeration of every tree of exactly `size` vertices with the given
/// root slot count. The callback sees each tree once; the arena is reused, so
/// clone inside the callback to keep a tree.
fn for_each_tree_inner(
    k: u32,
    root_slots: u32,
    size: usize,
    budget_cap: &mut Option<&mut u64>,
    emit: &mut dyn FnMut(&AnimalTree),
) -> Result<()> {
    assert!(size >= 1);
    let mut tree = AnimalTree::with_root(k, root_slots);
    // Agenda of (node, next slot) pairs still to be decided, in DFS order.
    let mut agenda: Vec<(u32, usize)> = vec![(0, 0)];
    fn go(
        tree: &mut AnimalTree,
        agenda: &mut Vec<(u32, usize)>,
        remaining: usize,
        cap: &mut Option<&mut u64>,
        emit: &mut dyn FnMut(&AnimalTree),
    ) -> Result<()> {
        let Some((node, slot)) = agenda.pop() else {
            if remaining == 0 {
                if let Some(counter) = cap {
                    if **counter == 0 {
                        return Err(Error::EnumerationCap {
                            cap: 0,
                            size: tree.size() as u32,
                        });
                    }
                    **counter -= 1;
                }
                emit(tree);
            }
            return Ok(());
        };
        let slot_count = tree.slots(node).len();
        let result = (|| -> Result<()> {
            if slot >= slot_count {
                // All slots of this node decided; continue with the rest.
                return go(tree, agenda, remaining, cap, emit);
            }
            // Leave the slot empty.
            agenda.push((node, slot + 1));
            go(tree, agenda, remaining, cap, emit)?;
            agenda.pop();
            // Or attach a child and descend into it first.
            if remaining > 0 {
                let child = tree.add_child(node, slot);
                agenda.push((node, slot + 1));
                agenda.push((child, 0));
                let r = go(tree, agenda, remaining - 1, cap, emit);
                agenda.pop();
                agenda.pop();
                tree.remove_last_child(node, slot);
                r?;
            }
            Ok(())
        })();
        agenda.push((node, slot));
        result
    }
    let r = go(&mut tree, &mut agenda, size - 1, budget_cap, emit);
    match r {
        Err(Error::EnumerationCap { size: s, .. }) => Err(Error::EnumerationCap {
            cap: 0,
            size: s,
        }),
        other => other,
    }
}

/// Visit every animal of exactly `size` vertices (root has k+1 slots).
pub fn for_each_animal(k: u32, size: usize, mut emit: impl FnMut(&AnimalTree)) {
    for_each_tree_inner(k, k + 1, size, &mut None, &mut emit).expect("uncapped enumeration");
}

/// Visit every k-ary branch tree of exactly `size` vertices (root has k
/// slots). These are the trees counted by the B/A generating functions.
pub fn for_each_branch_tree(k: u32, size: usize, mut emit: impl FnMut(&AnimalTree)) {
    for_each_tree_inner(k, k, size, &mut None, &mut emit).expect("uncapped enumeration");
}

/// Every animal of sizes 1..=n_max in canonical order (grouped by size,
/// lexicographic in the canonical encoding within a size). The cap bounds the
/// total number of animals emitted; exceeding it reports the size reached.
pub fn enumerate_animals(k: u32, n_max: usize, cap: u64) -> Result<Vec<Vec<AnimalTree>>> {
    let mut remaining = cap;
    let mut by_size = Vec::with_capacity(n_max);
    for size in 1..=n_max {
        let mut group = Vec::new();
        let mut counter = remaining;
        let r = for_each_tree_inner(k, k + 1, size, &mut Some(&mut counter), &mut |t| {
            group.push(t.clone())
        });
        if r.is_err() {
            return Err(Error::EnumerationCap {
                cap,
                size: size as u32,
            });
        }
        remaining = counter;
        group.sort_by(|a, b| a.canonical_string().cmp(&b.canonical_string()));
        by_size.push(group);
    }
    Ok(by_size)
}

/// All animals of one size, canonically sorted.
pub fn animals_of_size(k: u32, size: usize) -> Vec<AnimalTree> {
    let mut group = Vec::new();
    for_each_animal(k, size, |t| group.push(t.clone()));
    group.sort_by(|a, b| a.canonical_string().cmp(&b.canonical_string()));
    group
}

/// Number of animals of each size 1..=n_max, by streaming enumeration.
pub fn animal_counts(k: u32, n_max: usize) -> Vec<u64> {
    (1..=n_max)
        .map(|size| {
            let mut c = 0u64;
            for_each_animal(k, size, |_| c += 1);
            c
        })
        .collect()
}
