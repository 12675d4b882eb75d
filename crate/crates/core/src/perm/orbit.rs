use alloc::vec::Vec;

use super::Permutation;

const NOT_IN_ORBIT: u32 = u32::MAX;
const ROOT: u32 = u32::MAX - 1;

/// An orbit together with a Schreier vector.
///
/// `label[y]` is the index of the generator `s` with `y = parent^s`; the
/// transversal element for `y` is the product of labels along the path from
/// the root. Points are 0-based here.
#[derive(Clone, Debug)]
pub(crate) struct SchreierTree {
    pub points: Vec<u32>,
    label: Vec<u32>,
}

impl SchreierTree {
    pub fn new(degree: usize, root: usize) -> Self {
        let mut label = alloc::vec![NOT_IN_ORBIT; degree];
        label[root] = ROOT;
        SchreierTree {
            points: alloc::vec![root as u32],
            label,
        }
    }

    /// BFS orbit of `root` under `gens`.
    pub fn build(degree: usize, root: usize, gens: &[Permutation]) -> Self {
        let mut t = SchreierTree::new(degree, root);
        t.close(gens, 0, 0);
        t
    }

    #[inline]
    pub fn contains(&self, point: usize) -> bool {
        self.label[point] != NOT_IN_ORBIT
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn degree(&self) -> usize {
        self.label.len()
    }

    /// Extends the orbit after generators `first_new_gen..` were appended.
    ///
    /// Existing labels never change, so previously computed transversal
    /// elements stay valid.
    pub fn extend(&mut self, gens: &[Permutation], first_new_gen: usize) {
        let old_len = self.points.len();
        for i in 0..old_len {
            let x = self.points[i] as usize;
            for (gi, g) in gens.iter().enumerate().skip(first_new_gen) {
                let y = g.apply0(x);
                if self.label[y] == NOT_IN_ORBIT {
                    self.label[y] = gi as u32;
                    self.points.push(y as u32);
                }
            }
        }
        self.close(gens, old_len, 0);
    }

    fn close(&mut self, gens: &[Permutation], mut from: usize, first_gen: usize) {
        while from < self.points.len() {
            let x = self.points[from] as usize;
            for (gi, g) in gens.iter().enumerate().skip(first_gen) {
                let y = g.apply0(x);
                if self.label[y] == NOT_IN_ORBIT {
                    self.label[y] = gi as u32;
                    self.points.push(y as u32);
                }
            }
            from += 1;
        }
    }

    /// Generator index labelling the edge into `point`, `None` for the root.
    #[inline]
    pub fn label(&self, point: usize) -> Option<usize> {
        match self.label[point] {
            ROOT | NOT_IN_ORBIT => None,
            l => Some(l as usize),
        }
    }

    /// Right-multiplies `g` by the inverse of the transversal element of
    /// `point`, walking the tree back to the root.
    pub fn strip_into(&self, point: usize, g: &mut Permutation, inverses: &[Permutation]) {
        let mut y = point;
        while let Some(l) = self.label(y) {
            let inv = &inverses[l];
            g.right_mul_assign(inv);
            y = inv.apply0(y);
        }
    }

    /// Transversal element `u` with `root^u = point`.
    pub fn element(&self, point: usize, gens: &[Permutation], inverses: &[Permutation]) -> Permutation {
        let mut path = Vec::new();
        let mut y = point;
        while let Some(l) = self.label(y) {
            path.push(l);
            y = inverses[l].apply0(y);
        }
        let mut u = Permutation::identity(self.label.len());
        for &l in path.iter().rev() {
            u.right_mul_assign(&gens[l]);
        }
        u
    }
}

/// Orbit of a point with a transversal.
#[derive(Clone, Debug)]
pub struct Orbit {
    tree: SchreierTree,
    gens: Vec<Permutation>,
    inverses: Vec<Permutation>,
}

impl Orbit {
    /// Orbit of the 1-based `point` under `gens` (all of degree `degree`).
    pub fn new(degree: usize, gens: &[Permutation], point: usize) -> crate::Result<Self> {
        if point == 0 || point > degree {
            return Err(crate::Error::PointOutOfRange { point, degree });
        }
        for g in gens {
            if g.degree() != degree {
                return Err(crate::Error::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
        }
        Ok(Orbit {
            tree: SchreierTree::build(degree, point - 1, gens),
            gens: gens.to_vec(),
            inverses: gens.iter().map(Permutation::inverse).collect(),
        })
    }

    /// Orbit points, 1-based, in discovery order.
    pub fn points(&self) -> Vec<usize> {
        self.tree.points.iter().map(|&p| p as usize + 1).collect()
    }

    /// Sorted orbit points, 1-based.
    pub fn sorted_points(&self) -> Vec<usize> {
        let mut v = self.points();
        v.sort_unstable();
        v
    }

    pub fn len(&self) -> usize {
        self.tree.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, point: usize) -> bool {
        point >= 1 && point <= self.tree_degree() && self.tree.contains(point - 1)
    }

    fn tree_degree(&self) -> usize {
        self.tree.degree()
    }

    /// An element mapping the orbit's base point to `point`.
    pub fn transversal(&self, point: usize) -> Option<Permutation> {
        if !self.contains(point) {
            return None;
        }
        Some(self.tree.element(point - 1, &self.gens, &self.inverses))
    }
}
