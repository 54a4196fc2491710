//! Planar rooted tree combinatorics underlying the tree-indexed cochain
//! complex: enumeration, grafting, unique decomposition, leaf deletion, and
//! the operation labels attached to leaf positions.
//!
//! Trees here have every internal vertex of valence at least two. The degree
//! of a tree is its leaf count minus one; the set of degree-`n` trees is
//! counted by the little Schroeder numbers 1, 1, 3, 11, 45, 197, ...
//!
//! Serialized form (bit-exact grammar, no whitespace):
//! `tree := "*" | "(" tree tree+ ")"`. Leaves are indexed left to right
//! from 0. Canonical enumeration order is lexicographic on the serialized
//! string, where `(` sorts before `*`.

use std::fmt;

/// One of the three product labels of a trialgebra.
///
/// `Left` is the left product, `Right` the right product, `Middle` the
/// middle product. The `index` order (left, right, middle) fixes the block
/// layout used everywhere a triple of bilinear maps is vectorized.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OpLabel {
    Left,
    Right,
    Middle,
}

impl OpLabel {
    pub const ALL: [OpLabel; 3] = [OpLabel::Left, OpLabel::Right, OpLabel::Middle];

    pub fn index(self) -> usize {
        match self {
            OpLabel::Left => 0,
            OpLabel::Right => 1,
            OpLabel::Middle => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            OpLabel::Left => "left",
            OpLabel::Right => "right",
            OpLabel::Middle => "middle",
        }
    }
}

impl fmt::Display for OpLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which product an interior leaf orientation selects.
///
/// A leaf that is the leftmost child of its parent is *left-oriented*, the
/// rightmost child *right-oriented*, anything else a middle leaf. Middle
/// leaves always label the middle product; the two ways of assigning the
/// left/right products to left/right orientation are both representable so
/// that the calibration search over conventions can run. `CALIBRATED` is the
/// frozen outcome of that search: it is the unique choice (together with
/// [`TREE2_OPS`]) under which the kernel of the degree-2 tree coboundary
/// with central coefficients coincides with the 2-cocycle space.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    /// left-oriented -> left product, right-oriented -> right product
    LeftmostIsLeft,
    /// left-oriented -> right product, right-oriented -> left product
    LeftmostIsRight,
}

impl Orientation {
    pub const CALIBRATED: Orientation = Orientation::LeftmostIsLeft;
}

/// Frozen bijection between the three degree-2 trees, in canonical
/// enumeration order `((**)*)`, `(*(**))`, `(***)`, and the product labels.
/// Fixed by the same calibration as [`Orientation::CALIBRATED`].
pub const TREE2_OPS: [OpLabel; 3] = [OpLabel::Right, OpLabel::Left, OpLabel::Middle];

/// Canonical index in `enumerate_trees(2)` of the degree-2 tree assigned to
/// a product label under [`TREE2_OPS`].
pub fn tree2_index(op: OpLabel) -> usize {
    TREE2_OPS.iter().position(|&o| o == op).unwrap()
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TreeError {
    #[error("grafting needs at least two parts")]
    TooFewParts,
    #[error("a single leaf has no grafting decomposition")]
    LeafHasNoDecomposition,
    #[error("leaf index {index} out of range for a tree of degree {degree}")]
    IndexOutOfRange { index: usize, degree: usize },
    #[error("cannot delete the only leaf of a tree")]
    CannotDeleteFromSingleLeaf,
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
}

/// A planar rooted tree; every internal vertex has at least two children.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum PlanarTree {
    Leaf,
    Node(Vec<PlanarTree>),
}

impl PlanarTree {
    pub fn leaf_count(&self) -> usize {
        match self {
            PlanarTree::Leaf => 1,
            PlanarTree::Node(children) => children.iter().map(|c| c.leaf_count()).sum(),
        }
    }

    /// Degree = leaf count - 1.
    pub fn degree(&self) -> usize {
        self.leaf_count() - 1
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, PlanarTree::Leaf)
    }

    pub fn serialize(&self) -> String {
        let mut out = String::new();
        self.write(&mut out);
        out
    }

    fn write(&self, out: &mut String) {
        match self {
            PlanarTree::Leaf => out.push('*'),
            PlanarTree::Node(children) => {
                out.push('(');
                for c in children {
                    c.write(out);
                }
                out.push(')');
            }
        }
    }

    pub fn parse(text: &str) -> Result<PlanarTree, TreeError> {
        let bytes = text.as_bytes();
        let (tree, used) = Self::parse_at(bytes, 0)?;
        if used != bytes.len() {
            return Err(TreeError::Parse {
                offset: used,
                message: "trailing input after tree".into(),
            });
        }
        Ok(tree)
    }

    fn parse_at(bytes: &[u8], at: usize) -> Result<(PlanarTree, usize), TreeError> {
        match bytes.get(at) {
            Some(b'*') => Ok((PlanarTree::Leaf, at + 1)),
            Some(b'(') => {
                let mut pos = at + 1;
                let mut children = Vec::new();
                loop {
                    match bytes.get(pos) {
                        Some(b')') => {
                            if children.len() < 2 {
                                return Err(TreeError::Parse {
                                    offset: pos,
                                    message: "internal vertex needs at least two children".into(),
                                });
                            }
                            return Ok((PlanarTree::Node(children), pos + 1));
                        }
                        Some(_) => {
                            let (child, next) = Self::parse_at(bytes, pos)?;
                            children.push(child);
                            pos = next;
                        }
                        None => {
                            return Err(TreeError::Parse {
                                offset: pos,
                                message: "unclosed '('".into(),
                            })
                        }
                    }
                }
            }
            Some(_) => Err(TreeError::Parse {
                offset: at,
                message: "expected '*' or '('".into(),
            }),
            None => Err(TreeError::Parse {
                offset: at,
                message: "unexpected end of input".into(),
            }),
        }
    }

    /// Ordered parts of the unique grafting producing this tree; their count
    /// is the valence of the lowest internal vertex.
    pub fn decompose(&self) -> Result<Vec<PlanarTree>, TreeError> {
        match self {
            PlanarTree::Leaf => Err(TreeError::LeafHasNoDecomposition),
            PlanarTree::Node(children) => Ok(children.clone()),
        }
    }

    /// Removes leaf `i` and contracts any vertex left with a single child.
    /// The result has degree one less.
    pub fn delete_leaf(&self, i: usize) -> Result<PlanarTree, TreeError> {
        if self.is_leaf() {
            return Err(TreeError::CannotDeleteFromSingleLeaf);
        }
        let degree = self.degree();
        if i > degree {
            return Err(TreeError::IndexOutOfRange { index: i, degree });
        }
        Ok(self
            .delete_rec(i)
            .expect("tree of degree >= 1 cannot vanish"))
    }

    /// `None` means this subtree was the deleted leaf itself.
    fn delete_rec(&self, i: usize) -> Option<PlanarTree> {
        match self {
            PlanarTree::Leaf => None,
            PlanarTree::Node(children) => {
                let mut children = children.clone();
                let mut offset = 0;
                let mut target = None;
                for (c, child) in children.iter().enumerate() {
                    let leaves = child.leaf_count();
                    if i < offset + leaves {
                        target = Some((c, i - offset));
                        break;
                    }
                    offset += leaves;
                }
                let (c, local) = target.expect("leaf index within range");
                match children[c].delete_rec(local) {
                    Some(replacement) => children[c] = replacement,
                    None => {
                        children.remove(c);
                    }
                }
                if children.len() == 1 {
                    Some(children.pop().unwrap())
                } else {
                    Some(PlanarTree::Node(children))
                }
            }
        }
    }

    /// Whether leaf `i` is the first child, last child, or a middle child of
    /// its parent vertex.
    fn leaf_slot(&self, i: usize) -> LeafSlot {
        match self {
            PlanarTree::Leaf => panic!("a lone leaf has no parent"),
            PlanarTree::Node(children) => {
                let mut offset = 0;
                for (c, child) in children.iter().enumerate() {
                    let leaves = child.leaf_count();
                    if i < offset + leaves {
                        return match child {
                            PlanarTree::Leaf => {
                                if c == 0 {
                                    LeafSlot::First
                                } else if c == children.len() - 1 {
                                    LeafSlot::Last
                                } else {
                                    LeafSlot::Middle
                                }
                            }
                            _ => child.leaf_slot(i - offset),
                        };
                    }
                    offset += leaves;
                }
                panic!("leaf index within range");
            }
        }
    }

    /// Product label at position `i` of a tree of degree `d`, valid for
    /// `0 <= i <= d`, under the frozen orientation convention.
    ///
    /// The extreme positions use case tables over the grafting decomposition
    /// `psi_0 v ... v psi_k`:
    /// position 0 is left if `|psi_0| = 0` and `k = 1`, right if
    /// `|psi_0| > 0`, middle otherwise; position `d` is left if
    /// `|psi_k| > 0`, right if `|psi_k| = 0` and `k = 1`, middle otherwise.
    /// Interior positions are labelled by leaf orientation.
    pub fn op_label(&self, i: usize) -> Result<OpLabel, TreeError> {
        self.op_label_oriented(i, Orientation::CALIBRATED)
    }

    /// Same as [`op_label`](Self::op_label) with an explicit interior
    /// orientation convention; used by the calibration search.
    pub fn op_label_oriented(
        &self,
        i: usize,
        orientation: Orientation,
    ) -> Result<OpLabel, TreeError> {
        if self.is_leaf() {
            return Err(TreeError::CannotDeleteFromSingleLeaf);
        }
        let degree = self.degree();
        if i > degree {
            return Err(TreeError::IndexOutOfRange { index: i, degree });
        }
        let parts = self.decompose()?;
        let k = parts.len() - 1;
        if i == 0 {
            return Ok(if parts[0].degree() > 0 {
                OpLabel::Right
            } else if k == 1 {
                OpLabel::Left
            } else {
                OpLabel::Middle
            });
        }
        if i == degree {
            return Ok(if parts[k].degree() > 0 {
                OpLabel::Left
            } else if k == 1 {
                OpLabel::Right
            } else {
                OpLabel::Middle
            });
        }
        Ok(match (self.leaf_slot(i), orientation) {
            (LeafSlot::Middle, _) => OpLabel::Middle,
            (LeafSlot::First, Orientation::LeftmostIsLeft) => OpLabel::Left,
            (LeafSlot::Last, Orientation::LeftmostIsLeft) => OpLabel::Right,
            (LeafSlot::First, Orientation::LeftmostIsRight) => OpLabel::Right,
            (LeafSlot::Last, Orientation::LeftmostIsRight) => OpLabel::Left,
        })
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum LeafSlot {
    First,
    Middle,
    Last,
}

impl fmt::Debug for PlanarTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

impl fmt::Display for PlanarTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

impl std::str::FromStr for PlanarTree {
    type Err = TreeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PlanarTree::parse(s)
    }
}

/// Grafts an ordered list of trees under a new root. The degree of the
/// result is the sum of the part degrees plus (number of parts - 1).
pub fn graft(parts: Vec<PlanarTree>) -> Result<PlanarTree, TreeError> {
    if parts.len() < 2 {
        return Err(TreeError::TooFewParts);
    }
    Ok(PlanarTree::Node(parts))
}

/// All trees of degree `n` exactly once, in canonical order: lexicographic
/// on the serialized string (`(` before `*`).
pub fn enumerate_trees(n: usize) -> Vec<PlanarTree> {
    let mut by_degree: Vec<Vec<PlanarTree>> = vec![vec![PlanarTree::Leaf]];
    for d in 1..=n {
        let mut trees = Vec::new();
        // every tree of degree d >= 1 is graft(parts) with k+1 parts and
        // part degrees summing to d - k
        for k in 1..=d {
            for composition in compositions(d - k, k + 1) {
                let mut stems: Vec<Vec<PlanarTree>> = vec![Vec::new()];
                for &part_degree in &composition {
                    let mut extended = Vec::new();
                    for stem in &stems {
                        for part in &by_degree[part_degree] {
                            let mut s = stem.clone();
                            s.push(part.clone());
                            extended.push(s);
                        }
                    }
                    stems = extended;
                }
                for parts in stems {
                    trees.push(PlanarTree::Node(parts));
                }
            }
        }
        trees.sort_by_cached_key(|t| t.serialize());
        by_degree.push(trees);
    }
    by_degree.swap_remove(n)
}

/// All weak compositions of `total` into exactly `parts` nonnegative summands.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for head in 0..=total {
        for mut tail in compositions(total - head, parts - 1) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}
