//! Square-tiled surfaces.
//!
//! An origami on `n` unit squares is a pair of permutations: `r` sends a
//! square to its right neighbor and `u` to the one above. In the vertical
//! direction every leaf is closed, so the vertical foliation splits into
//! cylinders, one per class of parallel `u`-cycles (columns); horizontally
//! the same holds with `r`-cycles (rows).

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::foliation::{normalize, Component, ComponentKind, RayDecomposition};
use crate::pair::{self, PairReport};
use crate::rational::{self, Rational};

/// Permutation of `0..n` in image notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn new(images: Vec<usize>) -> std::result::Result<Self, String> {
        let n = images.len();
        let mut seen = vec![false; n];
        for (i, &x) in images.iter().enumerate() {
            if x >= n {
                return Err(format!("image {x} of {i} is out of range"));
            }
            if std::mem::replace(&mut seen[x], true) {
                return Err(format!("{x} has two preimages"));
            }
        }
        Ok(Perm(images))
    }

    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Perm(inv)
    }

    /// `self` after `other`: `x -> self(other(x))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&x| self.0[x]).collect())
    }

    /// Cycles, each starting at its smallest element, ordered by it.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.0[x];
            }
            out.push(cycle);
        }
        out
    }

    /// `p^-1 self p`: the same permutation after relabeling `i -> p(i)`.
    pub fn conjugate(&self, p: &Perm) -> Perm {
        p.compose(self).compose(&p.inverse())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Origami {
    r: Perm,
    u: Perm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CylinderDirection {
    Vertical,
    Horizontal,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cylinder {
    pub direction: CylinderDirection,
    /// Sorted squares of the cylinder.
    pub cells: Vec<usize>,
    /// Number of merged columns (rows).
    pub width: usize,
    /// Length of each column (row).
    pub circumference: usize,
    /// The merged cycles, the one holding the smallest square first. That
    /// one carries the core curve.
    pub strands: Vec<Vec<usize>>,
}

impl Cylinder {
    pub fn core(&self) -> &[usize] {
        &self.strands[0]
    }

    pub fn modulus(&self) -> Rational {
        rational::ratio(self.width as i64, self.circumference as i64)
    }
}

/// Vertices of the square tiling with their cone angles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeData {
    /// Cone angle of each vertex, in multiples of `2 pi`.
    pub angles: Vec<usize>,
    pub genus: usize,
}

impl ConeData {
    /// Gauss–Bonnet: `sum (2 pi - angle) = 2 pi chi`, in units of `2 pi`.
    pub fn satisfies_gauss_bonnet(&self) -> bool {
        let defect: i64 = self.angles.iter().map(|&k| 1 - k as i64).sum();
        defect == 2 - 2 * self.genus as i64
    }
}

impl Origami {
    /// Builds an origami from zero-indexed permutations and checks
    /// connectivity.
    pub fn new(r: Vec<usize>, u: Vec<usize>) -> Result<Self> {
        if r.is_empty() {
            return Err(Error::MalformedPermutation { name: "r", reason: "no squares".into() });
        }
        if r.len() != u.len() {
            return Err(Error::MalformedPermutation {
                name: "u",
                reason: format!("length {} differs from r's {}", u.len(), r.len()),
            });
        }
        let r = Perm::new(r).map_err(|reason| Error::MalformedPermutation { name: "r", reason })?;
        let u = Perm::new(u).map_err(|reason| Error::MalformedPermutation { name: "u", reason })?;
        let o = Origami { r, u };
        o.validate()?;
        Ok(o)
    }

    /// One-indexed images, as in the JSON form.
    pub fn from_one_indexed(r: &[usize], u: &[usize]) -> Result<Self> {
        let shift = |name: &'static str, v: &[usize]| -> Result<Vec<usize>> {
            v.iter()
                .map(|&x| {
                    x.checked_sub(1).ok_or_else(|| Error::MalformedPermutation {
                        name,
                        reason: "squares are numbered from 1".into(),
                    })
                })
                .collect()
        };
        Self::new(shift("r", r)?, shift("u", u)?)
    }

    /// Connectivity: the orbit of square 0 under `<r, u>` is everything.
    pub fn validate(&self) -> Result<()> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut orbit = 1;
        while let Some(x) = stack.pop() {
            for y in [self.r.apply(x), self.u.apply(x)] {
                if !seen[y] {
                    seen[y] = true;
                    orbit += 1;
                    stack.push(y);
                }
            }
        }
        if orbit != n {
            return Err(Error::Disconnected { orbit, n });
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.r.len()
    }

    pub fn r(&self) -> &Perm {
        &self.r
    }

    pub fn u(&self) -> &Perm {
        &self.u
    }

    /// Relabels square `i` as `p(i)`.
    pub fn relabel(&self, p: &Perm) -> Result<Origami> {
        if p.len() != self.n() {
            return Err(Error::InvalidParameter("relabeling has wrong size".into()));
        }
        Ok(Origami { r: self.r.conjugate(p), u: self.u.conjugate(p) })
    }

    /// Cylinders of the given direction, ordered by smallest square.
    ///
    /// Two adjacent columns `A` and `r(A)` belong to the same cylinder when
    /// `r u = u r` on all of `A`: the shared edge then has no cone point on
    /// it. Rows merge the same way with the roles of `r` and `u` swapped.
    pub fn cylinders(&self, direction: CylinderDirection) -> Vec<Cylinder> {
        let (along, across) = match direction {
            CylinderDirection::Vertical => (&self.u, &self.r),
            CylinderDirection::Horizontal => (&self.r, &self.u),
        };
        let strands = along.cycles();
        let mut strand_of = vec![0; self.n()];
        for (k, s) in strands.iter().enumerate() {
            for &x in s {
                strand_of[x] = k;
            }
        }
        let mut uf = UnionFind::new(strands.len());
        for (k, s) in strands.iter().enumerate() {
            let aligned = s
                .iter()
                .all(|&x| across.apply(along.apply(x)) == along.apply(across.apply(x)));
            if aligned {
                uf.union(k, strand_of[across.apply(s[0])]);
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for k in 0..strands.len() {
            groups.entry(uf.find(k)).or_default().push(k);
        }
        let mut out: Vec<Cylinder> = groups
            .into_values()
            .map(|members| {
                let circumference = strands[members[0]].len();
                debug_assert!(members.iter().all(|&k| strands[k].len() == circumference));
                let mut cells: Vec<usize> =
                    members.iter().flat_map(|&k| strands[k].iter().copied()).collect();
                cells.sort_unstable();
                // strands come out of `cycles` ordered by smallest element
                let strands: Vec<Vec<usize>> = members.iter().map(|&k| strands[k].clone()).collect();
                Cylinder {
                    direction,
                    width: members.len(),
                    circumference,
                    cells,
                    strands,
                }
            })
            .collect();
        out.sort_by_key(|c| c.cells[0]);
        out
    }

    /// Cone angles from the cycles of the commutator `u^-1 r^-1 u r`: each
    /// cycle of length `k` is a vertex of angle `2 pi k`.
    pub fn cone_data(&self) -> ConeData {
        let comm = self
            .u
            .inverse()
            .compose(&self.r.inverse())
            .compose(&self.u)
            .compose(&self.r);
        let angles: Vec<usize> = comm.cycles().iter().map(Vec::len).collect();
        // chi = V - E + F = V - 2n + n
        let chi = angles.len() as i64 - self.n() as i64;
        let genus = ((2 - chi) / 2) as usize;
        ConeData { angles, genus }
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.0[root] != root {
            root = self.0[root];
        }
        let mut y = x;
        while self.0[y] != root {
            let next = self.0[y];
            self.0[y] = root;
            y = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        // keep the smaller index as root so results are deterministic
        if ra < rb {
            self.0[rb] = ra;
        } else {
            self.0[ra] = rb;
        }
    }
}

/// Ray data of the flat structure in one direction: one cylinder component
/// per cylinder with `a = width`, `h = circumference`, so `area = n`.
pub fn ray_data(o: &Origami, direction: CylinderDirection) -> RayDecomposition {
    let prefix = match direction {
        CylinderDirection::Vertical => "V",
        CylinderDirection::Horizontal => "H",
    };
    let components = o
        .cylinders(direction)
        .iter()
        .enumerate()
        .map(|(j, c)| {
            Component::new(
                format!("{prefix}{}", j + 1).as_str(),
                ComponentKind::Cylinder,
                rational::int(c.width as i64),
                rational::int(c.circumference as i64),
            )
        })
        .collect();
    normalize(components).expect("cylinders have positive width and circumference")
}

/// `M[j][k]`: squares shared by the core column of vertical cylinder `j`
/// and the core row of horizontal cylinder `k`.
pub fn core_intersections(o: &Origami) -> Vec<Vec<usize>> {
    let vertical = o.cylinders(CylinderDirection::Vertical);
    let horizontal = o.cylinders(CylinderDirection::Horizontal);
    let mut in_row = vec![usize::MAX; o.n()];
    for (k, h) in horizontal.iter().enumerate() {
        for &x in h.core() {
            in_row[x] = k;
        }
    }
    vertical
        .iter()
        .map(|v| {
            let mut row = vec![0; horizontal.len()];
            for &x in v.core() {
                if in_row[x] != usize::MAX {
                    row[in_row[x]] += 1;
                }
            }
            row
        })
        .collect()
}

/// Bounds on `e^{2t} Ext_{X_t}` of the core of vertical cylinder `j`,
/// independent of `t`: `(h_j^2, 1/m_j)` with `h_j` the unit-norm pairing.
pub fn scaled_bounds(o: &Origami, j: usize) -> Result<(Rational, Rational)> {
    let d = ray_data(o, CylinderDirection::Vertical);
    let c = d.component(j)?;
    let lower = d.unit_h_squared(j)?;
    let upper = &c.h / &c.a;
    Ok((lower, upper))
}

/// `(e^{-2t} h_j^2, e^{-2t} / m_j)`: the product inequality with the
/// horizontal foliation below, the flowed cylinder's reciprocal modulus
/// above.
pub fn finite_t_bounds(o: &Origami, j: usize, t: f64) -> Result<(f64, f64)> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::InvalidParameter(format!("time {t} must be finite and nonnegative")));
    }
    let (lo, hi) = scaled_bounds(o, j)?;
    let k = (-2.0 * t).exp();
    Ok((k * rational::to_f64(&lo), k * rational::to_f64(&hi)))
}

/// Compares the vertical rays of two origamis under a caller-supplied
/// matching of their vertical cylinders.
pub fn compare_rays(o1: &Origami, o2: &Origami, matching: &[(usize, usize)]) -> Result<PairReport> {
    let d1 = ray_data(o1, CylinderDirection::Vertical);
    let d2 = ray_data(o2, CylinderDirection::Vertical);
    if matching.len() != d1.len() || matching.len() != d2.len() {
        return Err(Error::InvalidMatching(format!(
            "{} pairs for {} and {} cylinders",
            matching.len(),
            d1.len(),
            d2.len()
        )));
    }
    let mut left = vec![false; d1.len()];
    let mut right = vec![false; d2.len()];
    for &(i, j) in matching {
        if i >= d1.len() || j >= d2.len() {
            return Err(Error::InvalidMatching(format!("pair ({i}, {j}) out of range")));
        }
        if std::mem::replace(&mut left[i], true) || std::mem::replace(&mut right[j], true) {
            return Err(Error::InvalidMatching(format!("pair ({i}, {j}) repeats a cylinder")));
        }
    }
    // give the second ray the first ray's ids through the matching
    let mut renamed = d2.components().to_vec();
    for &(i, j) in matching {
        renamed[j].id = d1.components()[i].id.clone();
    }
    let d2 = normalize(renamed)?;
    Ok(pair::analyze(&d1, &d2))
}
