//! Vertices and vertex-represented polytopes.
//!
//! The strong basic valuations of the polytope instance are rational points
//! of the unit hypercube. A polytope is kept as its minimal vertex set
//! (extreme points only), which makes semantic equality plain set equality.

use num::{BigRational, One, Signed, Zero};

use crate::index_set::IndexSet;
use crate::vars::VarId;

use super::simplex;

pub type Rat = BigRational;

/// A rational point of the hypercube over `scope`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex {
    scope: IndexSet,
    coords: Vec<Rat>,
}

impl Vertex {
    pub fn new(scope: IndexSet, coords: Vec<Rat>) -> Self {
        assert_eq!(scope.len(), coords.len(), "coordinate arity must match scope");
        for c in &coords {
            assert!(
                !c.is_negative() && *c <= Rat::one(),
                "vertex coordinates must lie in [0, 1]"
            );
        }
        Self { scope, coords }
    }

    pub fn scope(&self) -> &IndexSet {
        &self.scope
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn coord(&self, v: VarId) -> Option<&Rat> {
        self.scope.position(v).map(|i| &self.coords[i])
    }
}

impl std::fmt::Debug for Vertex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")@{:?}", self.scope)
    }
}

/// A polytope inside the unit hypercube, as its extreme points. The empty
/// set is the contradiction; the full hypercube is the neutral element.
#[derive(Clone, PartialEq, Eq)]
pub struct VPolytope {
    scope: IndexSet,
    points: Vec<Vec<Rat>>, // sorted, deduplicated, extreme only
}

impl VPolytope {
    /// Builds the minimal representation of the hull of `points`.
    pub fn from_points(scope: IndexSet, points: Vec<Vec<Rat>>) -> Self {
        for p in &points {
            assert_eq!(p.len(), scope.len(), "point arity must match scope");
        }
        let mut points = points;
        points.sort();
        points.dedup();
        let points = extreme_points(points);
        Self { scope, points }
    }

    pub fn empty(scope: IndexSet) -> Self {
        Self {
            scope,
            points: Vec::new(),
        }
    }

    /// The full hypercube: every 0/1 corner of the scope.
    pub fn hypercube(scope: IndexSet) -> Self {
        let d = scope.len();
        let mut points = Vec::with_capacity(1 << d);
        for mask in 0u64..(1 << d) {
            points.push(
                (0..d)
                    .map(|i| {
                        if mask >> i & 1 == 1 {
                            Rat::one()
                        } else {
                            Rat::zero()
                        }
                    })
                    .collect(),
            );
        }
        points.sort();
        Self { scope, points }
    }

    pub fn scope(&self) -> &IndexSet {
        &self.scope
    }

    pub fn points(&self) -> &[Vec<Rat>] {
        &self.points
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        self.points
            .iter()
            .map(|p| Vertex::new(self.scope.clone(), p.clone()))
            .collect()
    }

    /// Projection onto `to ⊆ scope`: project every vertex, then re-minimize.
    pub fn project(&self, to: &IndexSet) -> VPolytope {
        assert!(to.is_subset(&self.scope), "projection target must be a sub-scope");
        let positions: Vec<usize> = to.iter().map(|v| self.scope.position(v).unwrap()).collect();
        let points = self
            .points
            .iter()
            .map(|p| positions.iter().map(|i| p[*i].clone()).collect())
            .collect();
        VPolytope::from_points(to.clone(), points)
    }

    /// Extension to `to ⊇ scope`: each new variable contributes both of its
    /// interval endpoints, so every vertex fans out into 0/1 corners.
    pub fn extend(&self, to: &IndexSet) -> VPolytope {
        assert!(self.scope.is_subset(to), "extension target must contain the scope");
        let fresh = to.difference(&self.scope);
        if fresh.is_empty() {
            return VPolytope {
                scope: to.clone(),
                points: self.points.clone(),
            };
        }
        let mut points = Vec::with_capacity(self.points.len() << fresh.len());
        for p in &self.points {
            for mask in 0u64..(1 << fresh.len()) {
                let mut q = vec![Rat::zero(); to.len()];
                for (v, c) in self.scope.iter().zip(p) {
                    q[to.position(v).unwrap()] = c.clone();
                }
                for (i, v) in fresh.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        q[to.position(v).unwrap()] = Rat::one();
                    }
                }
                points.push(q);
            }
        }
        // Corners of a product are extreme exactly when the base point is.
        let mut points = points;
        points.sort();
        points.dedup();
        VPolytope {
            scope: to.clone(),
            points,
        }
    }
}

impl std::fmt::Debug for VPolytope {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "VPolytope{:?}{{", self.scope)?;
        for (i, p) in self.points.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "(")?;
            for (j, c) in p.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{c}")?;
            }
            write!(f, ")")?;
        }
        write!(f, "}}")
    }
}

/// The disjunction of two polytopes: the hull of the union of their
/// extensions to the common scope.
pub fn hull_disjoin(a: &VPolytope, b: &VPolytope) -> VPolytope {
    let union = a.scope.union(&b.scope);
    let ea = a.extend(&union);
    let eb = b.extend(&union);
    let mut points = ea.points;
    points.extend(eb.points);
    VPolytope::from_points(union, points)
}

/// Is `p` a convex combination of `others`?
pub fn in_hull(p: &[Rat], others: &[&Vec<Rat>]) -> bool {
    if others.is_empty() {
        return false;
    }
    let d = p.len();
    let mut a: Vec<Vec<Rat>> = Vec::with_capacity(d + 1);
    a.push(vec![Rat::one(); others.len()]);
    for i in 0..d {
        a.push(others.iter().map(|q| q[i].clone()).collect());
    }
    let mut b = Vec::with_capacity(d + 1);
    b.push(Rat::one());
    b.extend(p.iter().cloned());
    simplex::feasible(&a, &b)
}

/// Keeps exactly the points that are not convex combinations of the others.
/// Input must be deduplicated.
pub fn extreme_points(points: Vec<Vec<Rat>>) -> Vec<Vec<Rat>> {
    if points.len() <= 1 {
        return points;
    }
    let keep: Vec<bool> = (0..points.len())
        .map(|i| {
            let others: Vec<&Vec<Rat>> = points
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, q)| q)
                .collect();
            !in_hull(&points[i], &others)
        })
        .collect();
    points
        .into_iter()
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|(p, _)| p)
        .collect()
}
