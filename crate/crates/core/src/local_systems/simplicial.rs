//! Finite simplicial sets given by their nondegenerate simplices.
//!
//! Every simplex is stored as `η^* y` with `y` nondegenerate and `η` a
//! monotone surjection (Eilenberg–Zilber). Faces and degeneracies are
//! computed by composing with the coface/codegeneracy maps and splitting the
//! result into a surjection followed by an injection.

use std::collections::{HashMap, VecDeque};
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};

/// Highest level for which simplex tables are built.
pub const MAX_LEVEL: usize = 6;

/// `η^* y`: a nondegenerate simplex `y` of dimension `nd_dim` pulled back
/// along the surjection `map: [m] → [nd_dim]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex {
    pub nd_dim: usize,
    pub nd: usize,
    pub map: Vec<usize>,
}

impl Simplex {
    pub fn nondegenerate(dim: usize, idx: usize) -> Self {
        Simplex { nd_dim: dim, nd: idx, map: (0..=dim).collect() }
    }

    pub fn dim(&self) -> usize {
        self.map.len() - 1
    }

    pub fn is_degenerate(&self) -> bool {
        self.dim() != self.nd_dim
    }
}

/// All simplices of one level, with an index.
#[derive(Debug)]
pub struct Level {
    pub simplices: Vec<Simplex>,
    index: HashMap<Simplex, usize>,
}

impl Level {
    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn index_of(&self, s: &Simplex) -> usize {
        self.index[s]
    }
}

/// Operator tables for one level `n`: `faces[i][x] = d_i x` (into level
/// `n-1`) and `degeneracies[i][x] = s_i x` (into level `n+1`).
#[derive(Debug, Default)]
struct Tables {
    faces: Vec<Vec<usize>>,
    degeneracies: Vec<Vec<usize>>,
}

#[derive(Debug)]
pub struct SimplicialSetFin {
    names: Vec<Vec<String>>,
    faces: Vec<Vec<Vec<Simplex>>>,
    basepoint: usize,
    levels: Vec<OnceLock<Arc<Level>>>,
    tables: Vec<OnceLock<Arc<Tables>>>,
    splits: std::sync::RwLock<HashMap<(usize, usize), Arc<Vec<(usize, usize)>>>>,
}

/// Monotone surjections `[m] → [k]`, lexicographically.
fn surjections(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize];
    fn rec(m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m + 1 {
            if *cur.last().unwrap() == k {
                out.push(cur.clone());
            }
            return;
        }
        let last = *cur.last().unwrap();
        let remaining = m + 1 - cur.len();
        for next in [last, last + 1] {
            if next <= k && k - next < remaining {
                cur.push(next);
                rec(m, k, cur, out);
                cur.pop();
            }
        }
    }
    rec(m, k, &mut cur, &mut out);
    out
}

impl SimplicialSetFin {
    /// Builds a simplicial set from named nondegenerate simplices. `faces[n][x]`
    /// lists the `n+1` faces of nondegenerate simplex `x` of dimension `n ≥ 1`
    /// (`faces[0]` is ignored). Simplicial identities and connectivity are checked.
    pub fn new(names: Vec<Vec<String>>, faces: Vec<Vec<Vec<Simplex>>>, basepoint: usize) -> Result<Self> {
        if names.is_empty() || names[0].is_empty() {
            return Err(Error::InvalidSpace("no vertices".into()));
        }
        if basepoint >= names[0].len() {
            return Err(Error::InvalidSpace("basepoint out of range".into()));
        }
        if names.len() > MAX_LEVEL {
            return Err(Error::InvalidSpace(format!("dimension above {}", MAX_LEVEL - 1)));
        }
        let mut faces = faces;
        faces.resize(names.len(), Vec::new());
        faces[0] = vec![Vec::new(); names[0].len()];
        for n in 1..names.len() {
            if faces[n].len() != names[n].len() {
                return Err(Error::InvalidSpace(format!("face data missing in dimension {n}")));
            }
            for (x, fs) in faces[n].iter().enumerate() {
                if fs.len() != n + 1 {
                    return Err(Error::InvalidSpace(format!("{} needs {} faces", names[n][x], n + 1)));
                }
                for f in fs {
                    if f.dim() != n - 1 || f.nd_dim >= names.len() || f.nd >= names[f.nd_dim].len() {
                        return Err(Error::InvalidSpace(format!("bad face of {}", names[n][x])));
                    }
                    let surjective = f.map.first() == Some(&0)
                        && f.map.windows(2).all(|w| w[1] == w[0] || w[1] == w[0] + 1)
                        && *f.map.last().unwrap() == f.nd_dim;
                    if !surjective {
                        return Err(Error::InvalidSpace(format!("bad degeneracy in a face of {}", names[n][x])));
                    }
                }
            }
        }
        let mut all = std::collections::HashSet::new();
        for level in &names {
            for n in level {
                if !all.insert(n.clone()) {
                    return Err(Error::InvalidSpace(format!("duplicate simplex name {n}")));
                }
            }
        }
        let k = SimplicialSetFin {
            names,
            faces,
            basepoint,
            levels: (0..=MAX_LEVEL).map(|_| OnceLock::new()).collect(),
            tables: (0..=MAX_LEVEL).map(|_| OnceLock::new()).collect(),
            splits: Default::default(),
        };
        k.check_identities()?;
        if !k.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(k)
    }

    fn check_identities(&self) -> Result<()> {
        for n in 2..self.names.len() {
            for x in 0..self.names[n].len() {
                let s = Simplex::nondegenerate(n, x);
                for j in 1..=n {
                    for i in 0..j {
                        let lhs = self.face(&self.face(&s, j), i);
                        let rhs = self.face(&self.face(&s, i), j - 1);
                        if lhs != rhs {
                            return Err(Error::InvalidSpace(format!(
                                "d{i} d{j} ≠ d{} d{i} on {}",
                                j - 1,
                                self.names[n][x]
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Connectivity of the 1-skeleton.
    pub fn is_connected(&self) -> bool {
        let nv = self.names[0].len();
        let mut seen = vec![false; nv];
        let mut queue = VecDeque::from([self.basepoint]);
        seen[self.basepoint] = true;
        while let Some(v) = queue.pop_front() {
            for e in 0..self.count(1) {
                let (a, b) = self.edge_ends(e);
                for (p, q) in [(a, b), (b, a)] {
                    if p == v && !seen[q] {
                        seen[q] = true;
                        queue.push_back(q);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Dimension of the top nondegenerate simplices.
    pub fn dim(&self) -> usize {
        self.names.iter().rposition(|l| !l.is_empty()).unwrap_or(0)
    }

    /// Number of nondegenerate simplices of dimension `n`.
    pub fn count(&self, n: usize) -> usize {
        self.names.get(n).map_or(0, |l| l.len())
    }

    pub fn names(&self, n: usize) -> &[String] {
        self.names.get(n).map_or(&[], |l| l.as_slice())
    }

    pub fn nondegenerate_faces(&self, n: usize, x: usize) -> &[Simplex] {
        &self.faces[n][x]
    }

    pub fn basepoint(&self) -> usize {
        self.basepoint
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.names.iter().enumerate().map(|(n, l)| if n % 2 == 0 { l.len() as i64 } else { -(l.len() as i64) }).sum()
    }

    /// Source and target vertices `(d_1 e, d_0 e)` of a nondegenerate edge.
    pub fn edge_ends(&self, e: usize) -> (usize, usize) {
        let f = &self.faces[1][e];
        (f[1].nd, f[0].nd)
    }

    /// `α^* x` for a monotone map `α: [p] → [dim x]`.
    pub fn pullback(&self, x: &Simplex, alpha: &[usize]) -> Simplex {
        let comp: Vec<usize> = alpha.iter().map(|&t| x.map[t]).collect();
        let mut image: Vec<usize> = comp.clone();
        image.dedup();
        let eps: Vec<usize> = comp.iter().map(|v| image.binary_search(v).expect("in image")).collect();
        let z = self.face_by_injection(x.nd_dim, x.nd, &image);
        Simplex { nd_dim: z.nd_dim, nd: z.nd, map: eps.iter().map(|&t| z.map[t]).collect() }
    }

    /// `δ^* y` for a nondegenerate `y` and an injection `δ: [q] → [k]`.
    fn face_by_injection(&self, k: usize, idx: usize, delta: &[usize]) -> Simplex {
        if delta.len() == k + 1 {
            return Simplex::nondegenerate(k, idx);
        }
        let j = (0..=k).rev().find(|v| !delta.contains(v)).expect("proper injection");
        let rest: Vec<usize> = delta.iter().map(|&t| if t < j { t } else { t - 1 }).collect();
        let f = self.faces[k][idx][j].clone();
        self.pullback(&f, &rest)
    }

    pub fn face(&self, x: &Simplex, i: usize) -> Simplex {
        let m = x.dim();
        let alpha: Vec<usize> = (0..m).map(|t| if t < i { t } else { t + 1 }).collect();
        self.pullback(x, &alpha)
    }

    pub fn degeneracy(&self, x: &Simplex, i: usize) -> Simplex {
        let m = x.dim();
        let alpha: Vec<usize> = (0..=m + 1).map(|t| if t <= i { t } else { t - 1 }).collect();
        self.pullback(x, &alpha)
    }

    /// All simplices of level `m`, nondegenerate first.
    pub fn level(&self, m: usize) -> Arc<Level> {
        assert!(m <= MAX_LEVEL, "level above {MAX_LEVEL}");
        self.levels[m]
            .get_or_init(|| {
                let mut simplices = Vec::new();
                for k in (0..=m.min(self.dim())).rev() {
                    let maps = surjections(m, k);
                    for idx in 0..self.count(k) {
                        for map in &maps {
                            simplices.push(Simplex { nd_dim: k, nd: idx, map: map.clone() });
                        }
                    }
                }
                let index = simplices.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
                Arc::new(Level { simplices, index })
            })
            .clone()
    }

    fn tables(&self, n: usize) -> Arc<Tables> {
        self.tables[n]
            .get_or_init(|| {
                let here = self.level(n);
                let mut t = Tables::default();
                if n > 0 {
                    let below = self.level(n - 1);
                    t.faces = (0..=n)
                        .map(|i| here.simplices.iter().map(|x| below.index_of(&self.face(x, i))).collect())
                        .collect();
                }
                if n < MAX_LEVEL {
                    let above = self.level(n + 1);
                    t.degeneracies = (0..=n)
                        .map(|i| here.simplices.iter().map(|x| above.index_of(&self.degeneracy(x, i))).collect())
                        .collect();
                }
                Arc::new(t)
            })
            .clone()
    }

    /// Number of simplices (degenerate included) at level `n`.
    pub fn level_size(&self, n: usize) -> usize {
        self.level(n).len()
    }

    /// `d_i` as an index table from level `n` to level `n-1`.
    pub fn face_table(&self, n: usize, i: usize) -> Vec<usize> {
        self.tables(n).faces[i].clone()
    }

    /// `s_i` as an index table from level `n` to level `n+1`.
    pub fn degeneracy_table(&self, n: usize, i: usize) -> Vec<usize> {
        self.tables(n).degeneracies[i].clone()
    }

    /// For each simplex of level `m+n`, the indices of its front `m`-face and back `n`-face.
    pub fn split_table(&self, m: usize, n: usize) -> Arc<Vec<(usize, usize)>> {
        if let Some(t) = self.splits.read().expect("cache poisoned").get(&(m, n)) {
            return t.clone();
        }
        let total = self.level(m + n);
        let front_level = self.level(m);
        let back_level = self.level(n);
        let front: Vec<usize> = (0..=m).collect();
        let back: Vec<usize> = (m..=m + n).collect();
        let t: Vec<(usize, usize)> = total
            .simplices
            .iter()
            .map(|x| {
                (front_level.index_of(&self.pullback(x, &front)), back_level.index_of(&self.pullback(x, &back)))
            })
            .collect();
        let t = Arc::new(t);
        self.splits.write().expect("cache poisoned").insert((m, n), t.clone());
        t
    }

    /// Index at level `n` of the totally degenerate simplex on the basepoint.
    pub fn basepoint_simplex(&self, n: usize) -> usize {
        self.level(n).index_of(&Simplex { nd_dim: 0, nd: self.basepoint, map: vec![0; n + 1] })
    }

    /// Level index of a nondegenerate simplex.
    pub fn nondegenerate_index(&self, n: usize, x: usize) -> usize {
        self.level(n).index_of(&Simplex::nondegenerate(n, x))
    }

    pub fn describe(&self, s: &Simplex) -> String {
        let base = self.names[s.nd_dim][s.nd].clone();
        if !s.is_degenerate() {
            return base;
        }
        // Write η^* y as a composite of degeneracies s_{i_1} ... s_{i_r} y
        // with i_1 > ... > i_r: i is repeated where η(i) = η(i+1).
        let ops: Vec<String> =
            (0..s.dim()).rev().filter(|&i| s.map[i] == s.map[i + 1]).map(|i| format!("s{i}")).collect();
        format!("{}({base})", ops.join(" "))
    }
}

/// Degenerate simplex `s_{i_1} … s_{i_r} y` from the list of degeneracy
/// indices (outermost first) applied to a nondegenerate `y` of dimension `k`.
pub fn degenerate(k: usize, idx: usize, ops: &[usize]) -> Simplex {
    let mut map: Vec<usize> = (0..=k).collect();
    for &i in ops.iter().rev() {
        // s_i (η^* y) = (η ∘ σ_i)^* y
        let m = map.len() - 1;
        map = (0..=m + 1).map(|t| map[if t <= i { t } else { t - 1 }]).collect();
    }
    Simplex { nd_dim: k, nd: idx, map }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle() -> SimplicialSetFin {
        let v = Simplex::nondegenerate(0, 0);
        SimplicialSetFin::new(vec![vec!["v".into()], vec!["e".into()]], vec![vec![], vec![vec![v.clone(), v]]], 0)
            .unwrap()
    }

    #[test]
    fn surjection_counts() {
        assert_eq!(surjections(3, 1).len(), 3);
        assert_eq!(surjections(4, 2).len(), 6);
        assert_eq!(surjections(2, 2), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn circle_levels() {
        let k = circle();
        assert_eq!(k.level_size(0), 1);
        assert_eq!(k.level_size(1), 2);
        assert_eq!(k.level_size(2), 3);
        assert_eq!(k.euler_characteristic(), 0);
        let e = Simplex::nondegenerate(1, 0);
        let s0 = k.degeneracy(&e, 0);
        assert_eq!(k.face(&s0, 0), e);
        assert_eq!(k.face(&s0, 1), e);
        assert!(k.face(&s0, 2).is_degenerate());
        assert_eq!(k.describe(&s0), "s0(e)");
    }

    #[test]
    fn simplicial_identities_on_all_levels() {
        let k = circle();
        for n in 2..=4 {
            for x in &k.level(n).simplices {
                for j in 0..=n {
                    for i in 0..j {
                        assert_eq!(k.face(&k.face(x, j), i), k.face(&k.face(x, i), j - 1));
                    }
                    for i in 0..n {
                        let d = k.degeneracy(x, i);
                        if j == i || j == i + 1 {
                            assert_eq!(&k.face(&d, j), x);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn degenerate_constructor_matches_operators() {
        let k = circle();
        let e = Simplex::nondegenerate(1, 0);
        assert_eq!(degenerate(1, 0, &[2, 0]), k.degeneracy(&k.degeneracy(&e, 0), 2));
        assert_eq!(degenerate(1, 0, &[1]), k.degeneracy(&e, 1));
    }

    #[test]
    fn rejects_bad_input() {
        let v = Simplex::nondegenerate(0, 0);
        let r = SimplicialSetFin::new(vec![vec!["v".into(), "w".into()]], vec![], 0);
        assert_eq!(r.unwrap_err(), Error::Disconnected);
        let r = SimplicialSetFin::new(vec![vec!["v".into()], vec!["e".into()]], vec![vec![], vec![vec![v]]], 0);
        assert!(matches!(r, Err(Error::InvalidSpace(_))));
    }
}
