use serde::Serialize;

use crate::district::DistrictMap;
use crate::error::Result;
use crate::graph::{block_tree, BlockTree, Graph};

/// Block tree rooted at a fixed leaf block, with children ordered by
/// their sorted vertex lists.
#[derive(Debug, Clone)]
pub struct RootedBlocks {
    pub tree: BlockTree,
    pub root: usize,
    pub parent_cut: Vec<Option<usize>>,
    pub parent_block: Vec<Option<usize>>,
    /// Child cut vertices of each block, ascending.
    pub child_cuts: Vec<Vec<usize>>,
    /// Child blocks of each block, grouped by child cut in cut order.
    pub children: Vec<Vec<usize>>,
    pub depth: Vec<usize>,
    /// Blocks in DFS preorder.
    pub dfs: Vec<usize>,
    dfs_pos: Vec<usize>,
    /// `in_sub[b][v]`: vertex `v` lies in `b` or a descendant of `b`.
    pub in_sub: Vec<Vec<bool>>,
    in_block: Vec<Vec<bool>>,
}

impl RootedBlocks {
    pub fn new(g: &Graph) -> Result<RootedBlocks> {
        let tree = block_tree(g)?;
        let nb = tree.blocks.len();
        let root = (0..nb)
            .filter(|&b| tree.is_leaf(b))
            .min_by_key(|&b| {
                let own = tree.blocks[b]
                    .iter()
                    .copied()
                    .filter(|&v| !tree.is_cut(v))
                    .min();
                (
                    own.unwrap_or(usize::MAX),
                    tree.cuts_of(b).first().copied().unwrap_or(usize::MAX),
                )
            })
            .expect("a block tree has a leaf block");
        let mut parent_cut = vec![None; nb];
        let mut parent_block = vec![None; nb];
        let mut child_cuts = vec![Vec::new(); nb];
        let mut children = vec![Vec::new(); nb];
        let mut depth = vec![0; nb];
        let mut dfs = Vec::with_capacity(nb);
        let mut stack = vec![root];
        let mut seen = vec![false; nb];
        seen[root] = true;
        while let Some(b) = stack.pop() {
            dfs.push(b);
            let mut cuts: Vec<usize> = tree
                .cuts_of(b)
                .into_iter()
                .filter(|&c| Some(c) != parent_cut[b])
                .collect();
            cuts.sort_unstable();
            let mut kids = Vec::new();
            for &c in &cuts {
                let mut under: Vec<usize> = tree.blocks_of[c]
                    .iter()
                    .copied()
                    .filter(|&x| x != b && !seen[x])
                    .collect();
                under.sort_by(|&x, &y| tree.blocks[x].cmp(&tree.blocks[y]));
                for x in under {
                    seen[x] = true;
                    parent_cut[x] = Some(c);
                    parent_block[x] = Some(b);
                    depth[x] = depth[b] + 1;
                    kids.push(x);
                }
            }
            for &x in kids.iter().rev() {
                stack.push(x);
            }
            child_cuts[b] = cuts;
            children[b] = kids;
        }
        let mut dfs_pos = vec![0; nb];
        for (i, &b) in dfs.iter().enumerate() {
            dfs_pos[b] = i;
        }
        let n = g.n();
        let mut in_block = vec![vec![false; n]; nb];
        for b in 0..nb {
            for &v in &tree.blocks[b] {
                in_block[b][v] = true;
            }
        }
        let mut in_sub = in_block.clone();
        for &b in dfs.iter().rev() {
            if let Some(p) = parent_block[b] {
                let child = in_sub[b].clone();
                for (x, y) in in_sub[p].iter_mut().zip(child) {
                    *x |= y;
                }
            }
        }
        Ok(RootedBlocks {
            tree,
            root,
            parent_cut,
            parent_block,
            child_cuts,
            children,
            depth,
            dfs,
            dfs_pos,
            in_sub,
            in_block,
        })
    }

    pub fn block_count(&self) -> usize {
        self.tree.blocks.len()
    }

    pub fn vertices(&self, b: usize) -> &[usize] {
        &self.tree.blocks[b]
    }

    pub fn contains(&self, b: usize, v: usize) -> bool {
        self.in_block[b][v]
    }

    pub fn is_leaf_block(&self, b: usize) -> bool {
        self.tree.is_leaf(b)
    }

    pub fn dfs_index(&self, b: usize) -> usize {
        self.dfs_pos[b]
    }

    /// `a` is a proper ancestor of `b`.
    pub fn is_ancestor(&self, a: usize, b: usize) -> bool {
        let mut x = self.parent_block[b];
        while let Some(p) = x {
            if p == a {
                return true;
            }
            x = self.parent_block[p];
        }
        false
    }

    /// Proper descendants of `b` in DFS order.
    pub fn descendants(&self, b: usize) -> Vec<usize> {
        self.dfs
            .iter()
            .copied()
            .filter(|&x| self.is_ancestor(b, x))
            .collect()
    }

    /// First child block (the leftmost grandchild in the bipartite tree).
    pub fn leftmost_child(&self, b: usize) -> Option<usize> {
        self.children[b].first().copied()
    }

    /// Non-root leaf blocks, in DFS order.
    pub fn leaf_blocks(&self) -> Vec<usize> {
        self.dfs
            .iter()
            .copied()
            .filter(|&b| b != self.root && self.is_leaf_block(b))
            .collect()
    }

    /// Child block of `b` whose subtree contains `v`, if `v` lies strictly
    /// below `b`.
    pub fn child_toward(&self, b: usize, v: usize) -> Option<usize> {
        self.children[b]
            .iter()
            .copied()
            .find(|&x| self.in_sub[x][v] && !self.in_block[b][v])
    }

    /// The block a vertex belongs to that is highest in the tree.
    pub fn highest_block_of(&self, v: usize) -> usize {
        *self.tree.blocks_of[v]
            .iter()
            .min_by_key(|&&b| (self.depth[b], self.dfs_pos[b]))
            .unwrap()
    }

    /// Vertices of the subtree of `b`.
    pub fn subtree_vertices(&self, b: usize) -> Vec<usize> {
        (0..self.in_sub[b].len())
            .filter(|&v| self.in_sub[b][v])
            .collect()
    }
}

/// Block type in a pseudo-canonical map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TypeTag {
    /// All vertices are singleton non-leaf districts.
    Singletons,
    /// Non-leaf districts inside the block, not all singletons.
    Consolidated,
    /// Covered by one leaf district, except possibly the parent cut.
    Leaf,
    None,
}

/// Per-block classification of a map.
#[derive(Debug, Clone, Serialize)]
pub struct BlockRecord {
    pub block: usize,
    pub down_set: Vec<usize>,
    pub is_elbow: bool,
    pub type_tag: TypeTag,
    /// Districts assigned to the block; `None` when some district meeting
    /// the block cannot be assigned.
    pub d_count: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BlockClassification {
    pub root: usize,
    pub blocks: Vec<Vec<usize>>,
    pub per_block: Vec<BlockRecord>,
    /// `(district, leaf block)` pairs for leaf districts.
    pub leaf_districts: Vec<(usize, usize)>,
}

/// Evaluates the block definitions for a map.
pub struct View<'a> {
    pub rb: &'a RootedBlocks,
    pub p: &'a DistrictMap,
    leaf_of: Vec<Option<usize>>,
}

impl<'a> View<'a> {
    pub fn new(rb: &'a RootedBlocks, p: &'a DistrictMap) -> View<'a> {
        let mut leaf_of = vec![None; p.k()];
        for l in rb.leaf_blocks() {
            let c = rb.parent_cut[l];
            let mut owner = None;
            let mut ok = true;
            for &v in rb.vertices(l) {
                if Some(v) == c {
                    continue;
                }
                let d = p.district_of(v);
                match owner {
                    None => owner = Some(d),
                    Some(o) if o == d => {}
                    _ => ok = false,
                }
            }
            if let (true, Some(d)) = (ok, owner) {
                if leaf_of[d].is_none() {
                    leaf_of[d] = Some(l);
                }
            }
        }
        View { rb, p, leaf_of }
    }

    /// The leaf block of a leaf district.
    pub fn leaf_of(&self, i: usize) -> Option<usize> {
        self.leaf_of[i]
    }

    pub fn is_leaf_district(&self, i: usize) -> bool {
        self.leaf_of[i].is_some()
    }

    /// Vertices of the district holding the parent cut of `w` that lie in
    /// the subtree of `w`. Empty for the root.
    pub fn down(&self, w: usize) -> Vec<usize> {
        let Some(c) = self.rb.parent_cut[w] else {
            return Vec::new();
        };
        let i = self.p.district_of(c);
        self.p
            .district(i)
            .iter()
            .copied()
            .filter(|&v| self.rb.in_sub[w][v])
            .collect()
    }

    pub fn is_elbow(&self, w: usize) -> bool {
        let Some(c) = self.rb.parent_cut[w] else {
            return false;
        };
        let i = self.p.district_of(c);
        let Some(l) = self.leaf_of[i] else {
            return false;
        };
        let down = self.down(w);
        down.len() > 1 && !(l == w || self.rb.is_ancestor(w, l))
    }

    pub fn is_singletons(&self, w: usize) -> bool {
        self.rb.vertices(w).iter().all(|&v| {
            let i = self.p.district_of(v);
            self.p.district(i).len() == 1 && !self.is_leaf_district(i)
        })
    }

    /// Type (iii): everything but the parent cut in one leaf district,
    /// which also holds the leftmost child block when `w` is not a leaf.
    pub fn is_leaf_type(&self, w: usize) -> bool {
        let c = self.rb.parent_cut[w];
        let mut owner = None;
        for &v in self.rb.vertices(w) {
            if Some(v) == c {
                continue;
            }
            let d = self.p.district_of(v);
            match owner {
                None => owner = Some(d),
                Some(o) if o == d => {}
                _ => return false,
            }
        }
        let Some(d) = owner else { return false };
        if !self.is_leaf_district(d) {
            return false;
        }
        if self.rb.is_leaf_block(w) && w != self.rb.root {
            return true;
        }
        match self.rb.leftmost_child(w) {
            Some(x) => self
                .rb
                .vertices(x)
                .iter()
                .all(|&v| self.p.district_of(v) == d),
            None => false,
        }
    }

    fn is_local(&self, w: usize) -> bool {
        self.rb.vertices(w).iter().all(|&v| {
            let i = self.p.district_of(v);
            !self.is_leaf_district(i) && self.p.district(i).iter().all(|&x| self.rb.contains(w, x))
        })
    }

    pub fn type_of(&self, w: usize) -> TypeTag {
        if self.is_singletons(w) {
            return TypeTag::Singletons;
        }
        if self.is_leaf_type(w) {
            return TypeTag::Leaf;
        }
        if self.is_local(w) {
            let mut a = self.rb.parent_block[w];
            while let Some(x) = a {
                if !self.is_singletons(x) {
                    return TypeTag::None;
                }
                a = self.rb.parent_block[x];
            }
            if self.rb.descendants(w).iter().all(|&x| self.is_leaf_type(x)) {
                return TypeTag::Consolidated;
            }
        }
        TypeTag::None
    }

    /// Block a district is assigned to: its leaf block, or the highest
    /// block containing it.
    pub fn assigned_block(&self, i: usize) -> Option<usize> {
        if let Some(l) = self.leaf_of[i] {
            return Some(l);
        }
        let d = self.p.district(i);
        if d.len() == 1 {
            return Some(self.rb.highest_block_of(d[0]));
        }
        self.rb.tree.blocks_of[d[0]]
            .iter()
            .copied()
            .find(|&b| d.iter().all(|&v| self.rb.contains(b, v)))
    }

    /// Districts assigned to each block, or `None` if some district cannot
    /// be assigned.
    pub fn d_vector(&self) -> Option<Vec<usize>> {
        let mut d = vec![0; self.rb.block_count()];
        for i in 0..self.p.k() {
            d[self.assigned_block(i)?] += 1;
        }
        Some(d)
    }

    pub fn is_pseudo_canonical(&self) -> bool {
        if self.rb.block_count() == 1 {
            return true;
        }
        (0..self.rb.block_count()).all(|w| self.type_of(w) != TypeTag::None)
    }

    pub fn classify(&self) -> BlockClassification {
        let d = self.d_vector();
        let per_block = (0..self.rb.block_count())
            .map(|w| BlockRecord {
                block: w,
                down_set: self.down(w),
                is_elbow: self.is_elbow(w),
                type_tag: self.type_of(w),
                d_count: d.as_ref().map(|d| d[w]),
            })
            .collect();
        let leaf_districts = (0..self.p.k())
            .filter_map(|i| self.leaf_of[i].map(|l| (i, l)))
            .collect();
        BlockClassification {
            root: self.rb.root,
            blocks: self.rb.tree.blocks.clone(),
            per_block,
            leaf_districts,
        }
    }
}

/// Classifies every block of `g` under `p` with the canonical root.
pub fn classify_blocks(g: &Graph, p: &DistrictMap) -> Result<BlockClassification> {
    let rb = RootedBlocks::new(g)?;
    Ok(View::new(&rb, p).classify())
}

/// Pseudo-canonical test; every map on a biconnected graph passes.
pub fn is_pseudo_canonical(g: &Graph, p: &DistrictMap) -> Result<bool> {
    let rb = RootedBlocks::new(g)?;
    Ok(View::new(&rb, p).is_pseudo_canonical())
}
