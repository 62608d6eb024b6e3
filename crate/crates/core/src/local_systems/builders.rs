//! Standard finite simplicial sets.

use super::simplicial::{degenerate, Simplex, SimplicialSetFin};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpaceKind {
    Point,
    Circle,
    Wedge(usize),
    Torus,
    GenusSurface(usize),
    /// Generator names and relators; a letter is a generator name, or the
    /// name in upper case for its inverse.
    Presentation { generators: Vec<String>, relators: Vec<Vec<String>> },
    /// Two circles of three edges each, joined at the basepoint.
    SubdividedWedge,
    /// The torus triangulated as a 3×3 grid of squares.
    GridTorus,
}

pub fn build_space(kind: &SpaceKind) -> Result<SimplicialSetFin> {
    match kind {
        SpaceKind::Point => Ok(point()),
        SpaceKind::Circle => Ok(wedge(1)),
        SpaceKind::Wedge(n) => Ok(wedge(*n)),
        SpaceKind::Torus => torus(),
        SpaceKind::GenusSurface(g) => genus_surface(*g),
        SpaceKind::Presentation { generators, relators } => presentation_complex(generators, relators),
        SpaceKind::SubdividedWedge => Ok(subdivided_wedge()),
        SpaceKind::GridTorus => Ok(grid_torus(3)),
    }
}

pub fn point() -> SimplicialSetFin {
    SimplicialSetFin::new(vec![vec!["v".into()]], vec![], 0).expect("valid")
}

pub fn circle() -> SimplicialSetFin {
    wedge(1)
}

pub fn wedge(n: usize) -> SimplicialSetFin {
    let gens: Vec<String> = if n == 1 { vec!["e".into()] } else { (1..=n).map(|i| format!("e{i}")).collect() };
    presentation_complex(&gens, &[]).expect("valid")
}

pub fn torus() -> Result<SimplicialSetFin> {
    let w = |s: &str| s.chars().map(|c| c.to_string()).collect::<Vec<_>>();
    presentation_complex(&["x".into(), "y".into()], &[w("xyXY")])
}

/// Closed orientable surface from the relator `[a1,b1]⋯[ag,bg]`.
pub fn genus_surface(g: usize) -> Result<SimplicialSetFin> {
    if g == 0 {
        return Err(Error::InvalidSpace("genus must be positive".into()));
    }
    let mut gens = Vec::new();
    let mut rel = Vec::new();
    for i in 1..=g {
        let (a, b) = (format!("a{i}"), format!("b{i}"));
        rel.extend([a.clone(), b.clone(), a.to_uppercase(), b.to_uppercase()]);
        gens.extend([a, b]);
    }
    presentation_complex(&gens, &[rel])
}

/// One vertex, a loop per generator, and each relator disc triangulated by
/// the diagonals `D_k` representing its prefixes (`D_0 = D_L = 1`).
pub fn presentation_complex(generators: &[String], relators: &[Vec<String>]) -> Result<SimplicialSetFin> {
    for (i, g) in generators.iter().enumerate() {
        if g.is_empty() || g.to_uppercase() == *g {
            return Err(Error::InvalidPresentation(format!("generator {g:?} needs a distinct upper-case inverse")));
        }
        if generators[..i].iter().any(|h| h == g || h.to_uppercase() == g.to_uppercase()) {
            return Err(Error::InvalidPresentation(format!("duplicate generator {g}")));
        }
    }
    let v = Simplex::nondegenerate(0, 0);
    let unit = degenerate(0, 0, &[0]);
    let mut edge_names: Vec<String> = generators.to_vec();
    let mut edge_faces: Vec<Vec<Simplex>> = vec![vec![v.clone(), v.clone()]; generators.len()];
    let mut tri_names = Vec::new();
    let mut tri_faces = Vec::new();
    for (r, rel) in relators.iter().enumerate() {
        if rel.is_empty() {
            return Err(Error::InvalidPresentation(format!("relator {r} is empty")));
        }
        let letters: Vec<(usize, bool)> = rel
            .iter()
            .map(|l| {
                generators
                    .iter()
                    .position(|g| g == l)
                    .map(|i| (i, false))
                    .or_else(|| generators.iter().position(|g| g.to_uppercase() == *l).map(|i| (i, true)))
                    .ok_or_else(|| Error::InvalidPresentation(format!("unknown letter {l} in relator {r}")))
            })
            .collect::<Result<_>>()?;
        let len = letters.len();
        let mut diag: Vec<Option<Simplex>> = vec![None; len + 1];
        diag[0] = Some(unit.clone());
        diag[len] = Some(unit.clone());
        let mut skip = vec![false; len + 1];
        if len >= 2 {
            if let (g, false) = letters[0] {
                diag[1] = Some(Simplex::nondegenerate(1, g));
                skip[1] = true;
            }
            if let (g, true) = letters[len - 1] {
                if diag[len - 1].is_none() {
                    diag[len - 1] = Some(Simplex::nondegenerate(1, g));
                    skip[len] = true;
                }
            }
        }
        for (k, d) in diag.iter_mut().enumerate() {
            if d.is_none() {
                *d = Some(Simplex::nondegenerate(1, edge_names.len()));
                edge_names.push(format!("r{r}_{k}"));
                edge_faces.push(vec![v.clone(), v.clone()]);
            }
        }
        for k in 1..=len {
            if skip[k] {
                continue;
            }
            let (g, inverted) = letters[k - 1];
            let x = Simplex::nondegenerate(1, g);
            let (prev, next) = (diag[k - 1].clone().unwrap(), diag[k].clone().unwrap());
            // faces listed as (d0, d1, d2); flatness reads ω(d2)ω(d0) = ω(d1)
            let faces = if inverted { vec![x, prev, next] } else { vec![x, next, prev] };
            tri_names.push(format!("t{r}_{k}"));
            tri_faces.push(faces);
        }
    }
    let mut names = vec![vec!["v".to_string()], edge_names];
    let mut faces = vec![vec![], edge_faces];
    if !tri_names.is_empty() {
        names.push(tri_names);
        faces.push(tri_faces);
    }
    SimplicialSetFin::new(names, faces, 0)
}

pub fn subdivided_wedge() -> SimplicialSetFin {
    let vs = ["v", "a1", "a2", "b1", "b2"];
    let edges = [("p1", 0, 1), ("p2", 1, 2), ("p3", 2, 0), ("q1", 0, 3), ("q2", 3, 4), ("q3", 4, 0)];
    let names = vec![
        vs.iter().map(|s| s.to_string()).collect(),
        edges.iter().map(|e| e.0.to_string()).collect(),
    ];
    let faces = vec![
        vec![],
        edges.iter().map(|&(_, a, b)| vec![Simplex::nondegenerate(0, b), Simplex::nondegenerate(0, a)]).collect(),
    ];
    SimplicialSetFin::new(names, faces, 0).expect("valid")
}

/// The `n×n` grid torus: vertices `(i,j)`, edges `h`, `v` and diagonal `g`
/// out of each vertex, and two triangles per square.
pub fn grid_torus(n: usize) -> SimplicialSetFin {
    let vid = |i: usize, j: usize| (i % n) * n + (j % n);
    let mut vnames = vec![String::new(); n * n];
    for i in 0..n {
        for j in 0..n {
            vnames[vid(i, j)] = format!("p{i}{j}");
        }
    }
    let (h, v, g) = (|i: usize, j: usize| 3 * vid(i, j), |i: usize, j: usize| 3 * vid(i, j) + 1, |i: usize, j: usize| 3 * vid(i, j) + 2);
    let mut enames = vec![String::new(); 3 * n * n];
    let mut efaces = vec![Vec::new(); 3 * n * n];
    let mut tnames = Vec::new();
    let mut tfaces = Vec::new();
    let e = |k: usize| Simplex::nondegenerate(1, k);
    let p = |k: usize| Simplex::nondegenerate(0, k);
    for i in 0..n {
        for j in 0..n {
            enames[h(i, j)] = format!("h{i}{j}");
            enames[v(i, j)] = format!("v{i}{j}");
            enames[g(i, j)] = format!("g{i}{j}");
            efaces[h(i, j)] = vec![p(vid(i + 1, j)), p(vid(i, j))];
            efaces[v(i, j)] = vec![p(vid(i, j + 1)), p(vid(i, j))];
            efaces[g(i, j)] = vec![p(vid(i + 1, j + 1)), p(vid(i, j))];
            tnames.push(format!("l{i}{j}"));
            tfaces.push(vec![e(v(i + 1, j)), e(g(i, j)), e(h(i, j))]);
            tnames.push(format!("u{i}{j}"));
            tfaces.push(vec![e(h(i, j + 1)), e(g(i, j)), e(v(i, j))]);
        }
    }
    SimplicialSetFin::new(vec![vnames, enames, tnames], vec![vec![], efaces, tfaces], 0).expect("valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euler_characteristics() {
        assert_eq!(point().euler_characteristic(), 1);
        assert_eq!(circle().euler_characteristic(), 0);
        assert_eq!(wedge(3).euler_characteristic(), -2);
        let t = torus().unwrap();
        assert_eq!((t.count(1), t.count(2)), (3, 2));
        assert_eq!(t.euler_characteristic(), 0);
        let s = genus_surface(2).unwrap();
        assert_eq!((s.count(1), s.count(2)), (9, 6));
        assert_eq!(s.euler_characteristic(), -2);
        assert_eq!(grid_torus(3).euler_characteristic(), 0);
        assert_eq!(subdivided_wedge().euler_characteristic(), -1);
    }

    #[test]
    fn short_relators() {
        let w = |s: &[&str]| s.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        // x², xY and x alone
        for rel in [w(&["x", "x"]), w(&["x", "Y"]), w(&["x"]), w(&["X", "Y", "x"])] {
            let k = presentation_complex(&w(&["x", "y"]), std::slice::from_ref(&rel)).unwrap();
            assert_eq!(k.euler_characteristic(), 0, "{rel:?}");
        }
    }

    #[test]
    fn malformed_presentations() {
        let gens = vec!["x".to_string()];
        assert!(matches!(presentation_complex(&gens, &[vec!["z".into()]]), Err(Error::InvalidPresentation(_))));
        assert!(matches!(presentation_complex(&gens, &[vec![]]), Err(Error::InvalidPresentation(_))));
        assert!(presentation_complex(&["X".into()], &[]).is_err());
    }
}
