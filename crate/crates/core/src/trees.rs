//! Plane trees with multiset labels: weakly increasing trees, multiset
//! trees, the permutation-to-tree bijection, and the leaf statistics behind
//! the gamma-coefficient interpretation.
//!
//! Trees live in an arena with ordered child lists. Enumeration inserts
//! labels in nondecreasing batches, each node as the rightmost child of its
//! parent, with parent indices nondecreasing inside a batch of equal labels;
//! this generates every tree exactly once. Internal-node statistics match
//! the strict ascent count of the corresponding word (no sentinel), which is
//! the convention the tree results are stated in.

use num::BigInt;

use crate::combinatorics::value_words;
use crate::error::CmeError;
use crate::limits::Limits;
use crate::analysis::symmetric_decomposition;
use crate::eulerian::{degree_and_codegree, eulerian_by_transform};
use crate::poly::{IntPoly, Poly};
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TreeMode {
    /// Child labels weakly greater than the parent label.
    WeaklyIncreasing,
    /// Child labels strictly greater than the parent label.
    MultisetTree,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct TreeNode {
    label: u32,
    children: Vec<usize>,
}

/// A rooted plane tree; node 0 is the root with label 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneTree {
    nodes: Vec<TreeNode>,
}

impl PlaneTree {
    fn new() -> Self {
        PlaneTree {
            nodes: vec![TreeNode {
                label: 0,
                children: Vec::new(),
            }],
        }
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn label(&self, idx: usize) -> u32 {
        self.nodes[idx].label
    }

    pub fn children(&self, idx: usize) -> &[usize] {
        &self.nodes[idx].children
    }

    fn add_child_rightmost(&mut self, parent: usize, label: u32) -> usize {
        let idx = self.nodes.len();
        self.nodes.push(TreeNode {
            label,
            children: Vec::new(),
        });
        self.nodes[parent].children.push(idx);
        idx
    }

    fn add_child_leftmost(&mut self, parent: usize, label: u32) -> usize {
        let idx = self.nodes.len();
        self.nodes.push(TreeNode {
            label,
            children: Vec::new(),
        });
        self.nodes[parent].children.insert(0, idx);
        idx
    }

    /// Layout-independent nested-list form, e.g. [0,[1,[2]],[1]].
    pub fn canonical(&self) -> String {
        fn write(tree: &PlaneTree, idx: usize, out: &mut String) {
            out.push('[');
            out.push_str(&tree.nodes[idx].label.to_string());
            for &c in &tree.nodes[idx].children {
                out.push(',');
                write(tree, c, out);
            }
            out.push(']');
        }
        let mut out = String::new();
        write(self, 0, &mut out);
        out
    }
}

impl std::fmt::Display for PlaneTree {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.canonical())
    }
}

/// Internal/leaf/young-leaf counts over the non-root nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TreeStats {
    pub internal: u32,
    pub leaves: u32,
    pub young_leaves: u32,
}

pub fn tree_statistics(tree: &PlaneTree) -> TreeStats {
    let mut internal = 0;
    let mut leaves = 0;
    let mut young_leaves = 0;
    for idx in 0..tree.node_count() {
        for (pos, &child) in tree.children(idx).iter().enumerate() {
            let is_last = pos + 1 == tree.children(idx).len();
            if tree.children(child).is_empty() {
                leaves += 1;
                if !is_last {
                    young_leaves += 1;
                }
            } else {
                internal += 1;
            }
        }
    }
    TreeStats {
        internal,
        leaves,
        young_leaves,
    }
}

/// Every tree on the label multiset, each exactly once.
pub fn enumerate_trees(
    multiset: &[u32],
    mode: TreeMode,
    limits: &Limits,
) -> Result<Vec<PlaneTree>> {
    if multiset.contains(&0) {
        return Err(CmeError::InvalidSpec("labels must be positive".into()));
    }
    let mut labels = multiset.to_vec();
    labels.sort_unstable();
    let mut out = Vec::new();
    let mut tree = PlaneTree::new();
    place(
        &labels,
        0,
        0,
        mode,
        &mut tree,
        &mut out,
        limits.enumeration_cap,
    )?;
    return Ok(out);

    fn admissible(mode: TreeMode, parent_label: u32, label: u32) -> bool {
        match mode {
            TreeMode::WeaklyIncreasing => parent_label <= label,
            TreeMode::MultisetTree => parent_label < label,
        }
    }

    fn place(
        labels: &[u32],
        next: usize,
        min_parent: usize,
        mode: TreeMode,
        tree: &mut PlaneTree,
        out: &mut Vec<PlaneTree>,
        cap: u128,
    ) -> Result<()> {
        if next == labels.len() {
            if out.len() as u128 >= cap {
                return Err(CmeError::CapacityExceeded {
                    required: out.len() as u128 + 1,
                    cap,
                });
            }
            out.push(tree.clone());
            return Ok(());
        }
        let label = labels[next];
        // a new label value resets the canonical parent-index floor
        let floor = if next > 0 && labels[next - 1] == label {
            min_parent
        } else {
            0
        };
        for parent in floor..tree.node_count() {
            if !admissible(mode, tree.nodes[parent].label, label) {
                continue;
            }
            let idx = tree.add_child_rightmost(parent, label);
            place(labels, next + 1, parent, mode, tree, out, cap)?;
            tree.nodes[parent].children.pop();
            tree.nodes.truncate(idx);
        }
        Ok(())
    }
}

/// Distribution of internal-node counts over all trees on the multiset.
pub fn internal_distribution(
    multiset: &[u32],
    mode: TreeMode,
    limits: &Limits,
) -> Result<IntPoly> {
    let trees = enumerate_trees(multiset, mode, limits)?;
    let mut hist = vec![BigInt::from(0); multiset.len() + 1];
    for t in &trees {
        hist[tree_statistics(t).internal as usize] += 1;
    }
    Ok(Poly::new(hist))
}

/// The Eulerian-Narayana polynomial: internal-node distribution over weakly
/// increasing trees.
pub fn eulerian_narayana(multiset: &[u32], limits: &Limits) -> Result<IntPoly> {
    internal_distribution(multiset, TreeMode::WeaklyIncreasing, limits)
}

/// Strict ascent count of an uncolored word, no sentinel appended.
pub fn word_ascents(word: &[u32]) -> u32 {
    word.windows(2).filter(|w| w[0] < w[1]).count() as u32
}

/// The bijection from multiset permutations to multiset trees: each letter
/// becomes the child of the rightmost earlier letter with a smaller value
/// (the root if none), placed as the youngest (leftmost) child.
pub fn perm_to_tree(word: &[u32]) -> PlaneTree {
    let mut tree = PlaneTree::new();
    let mut occurrence_nodes: Vec<usize> = Vec::with_capacity(word.len());
    for (i, &v) in word.iter().enumerate() {
        let parent = (0..i)
            .rev()
            .find(|&j| word[j] < v)
            .map(|j| occurrence_nodes[j])
            .unwrap_or(0);
        let idx = tree.add_child_leftmost(parent, v);
        occurrence_nodes.push(idx);
    }
    tree
}

/// The G/H split of multiset trees on {1^k, ..., (n-1)^k, n}: G holds the
/// trees whose permutation has n immediately after a non-rightmost copy of
/// n-1, H the rest.
#[derive(Debug, Clone)]
pub struct GhPartition {
    pub g: Vec<PlaneTree>,
    pub h: Vec<PlaneTree>,
    pub g_poly: IntPoly,
    pub h_poly: IntPoly,
}

pub fn partition_gh(n: usize, k: u32, limits: &Limits) -> Result<GhPartition> {
    if n < 2 {
        return Err(CmeError::InvalidSpec("n must be at least 2".into()));
    }
    let mut m = vec![k; n];
    m[n - 1] = 1;
    let count: BigInt = crate::numeric::multinomial(&m);
    if count > BigInt::from(limits.enumeration_cap) {
        return Err(CmeError::CapacityExceeded {
            required: u128::try_from(&count).unwrap_or(u128::MAX),
            cap: limits.enumeration_cap,
        });
    }
    let words = value_words(&m);
    let n_val = n as u32;
    let mut g = Vec::new();
    let mut h = Vec::new();
    let mut g_hist = vec![BigInt::from(0); m.iter().sum::<u32>() as usize + 1];
    let mut h_hist = g_hist.clone();
    for word in &words {
        let tree = perm_to_tree(word);
        let internal = tree_statistics(&tree).internal as usize;
        let pos = word.iter().position(|&v| v == n_val).unwrap();
        let in_g = pos > 0
            && word[pos - 1] == n_val - 1
            && word[pos + 1..].contains(&(n_val - 1));
        if in_g {
            g_hist[internal] += 1;
            g.push(tree);
        } else {
            h_hist[internal] += 1;
            h.push(tree);
        }
    }
    Ok(GhPartition {
        g,
        h,
        g_poly: Poly::new(g_hist),
        h_poly: Poly::new(h_hist),
    })
}

/// Verifies the partition sums against the symmetric decomposition of the
/// Eulerian polynomial: the G side must be x*b and the H side must be a.
pub fn verify_gh_partition(n: usize, k: u32, limits: &Limits) -> Result<bool> {
    let partition = partition_gh(n, k, limits)?;
    let mut m = vec![k; n];
    m[n - 1] = 1;
    let spec = crate::combinatorics::MultisetSpec::new(m, vec![1; n])?;
    let a_poly = eulerian_by_transform(&spec)?.poly;
    let (degree, _) = degree_and_codegree(&spec);
    let decomposition = symmetric_decomposition(&a_poly, degree)?;
    Ok(partition.g_poly == decomposition.b.shift_up(1) && partition.h_poly == decomposition.a)
}

/// Leaf-count histogram over weakly increasing trees without young leaves:
/// entry i counts the trees with i+1 leaves.
pub fn tree_gamma(multiset: &[u32], limits: &Limits) -> Result<Vec<BigInt>> {
    let trees = enumerate_trees(multiset, TreeMode::WeaklyIncreasing, limits)?;
    let mut hist: Vec<BigInt> = Vec::new();
    for t in &trees {
        let stats = tree_statistics(t);
        if stats.young_leaves != 0 {
            continue;
        }
        let slot = (stats.leaves - 1) as usize;
        if hist.len() <= slot {
            hist.resize(slot + 1, BigInt::from(0));
        }
        hist[slot] += 1;
    }
    if hist.is_empty() {
        hist.push(BigInt::from(0));
    }
    Ok(hist)
}
