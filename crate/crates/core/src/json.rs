//! JSON readers and writers. Rationals are strings `"p/q"` in lowest terms
//! (integers may also be given as JSON numbers on input).

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::hull::{HullResult, WeightTable};
use crate::lie_core::{Alphabet, FreeLieAlgebra, Generator, LieElement, NilpotentAlgebra, Word};
use crate::linalg::Matrix;
use crate::local_systems::{build_space, Simplex, SimplicialSetFin, SpaceKind};
use crate::presentations::PresentedLie;
use crate::scalar::{format_rational, parse_rational, Scalar, Q};
use crate::sdc::DgAlgebra;

fn bad(msg: impl Into<String>) -> Error {
    Error::Json(msg.into())
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| bad(format!("missing field {key:?}")))
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| bad(format!("{what} must be an array")))
}

fn as_str<'a>(v: &'a Value, what: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| bad(format!("{what} must be a string")))
}

fn as_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64().map(|n| n as usize).ok_or_else(|| bad(format!("{what} must be a non-negative integer")))
}

fn as_i64(v: &Value, what: &str) -> Result<i64> {
    v.as_i64().ok_or_else(|| bad(format!("{what} must be an integer")))
}

pub fn rational_to_json(q: &Q) -> Value {
    Value::String(format_rational(q))
}

pub fn rational_from_json(v: &Value) -> Result<Q> {
    match v {
        Value::String(s) => parse_rational(s).ok_or_else(|| bad(format!("bad rational {s:?}"))),
        Value::Number(n) => n.as_i64().map(Q::from_int).ok_or_else(|| bad(format!("non-integer number {n}"))),
        _ => Err(bad("rational must be a \"p/q\" string")),
    }
}

pub fn vector_to_json(v: &[Q]) -> Value {
    Value::Array(v.iter().map(rational_to_json).collect())
}

pub fn vector_from_json(v: &Value) -> Result<Vec<Q>> {
    as_array(v, "vector")?.iter().map(rational_from_json).collect()
}

fn matrix_to_json(m: &Matrix<Q>) -> Value {
    Value::Array((0..m.nrows()).map(|r| vector_to_json(m.row(r))).collect())
}

fn matrix_from_json(v: &Value, rows: usize, cols: usize) -> Result<Matrix<Q>> {
    let rs: Vec<Vec<Q>> = as_array(v, "matrix")?.iter().map(vector_from_json).collect::<Result<_>>()?;
    if rs.len() != rows || rs.iter().any(|r| r.len() != cols) {
        return Err(bad(format!("matrix must be {rows}×{cols}")));
    }
    Ok(Matrix::from_rows(cols, &rs))
}

// ---------------------------------------------------------------- Lie elements

fn parse_word(alphabet: &Alphabet, s: &str) -> Result<Word> {
    let letters: Vec<&str> = if alphabet.single_char_names() {
        s.char_indices().map(|(i, c)| &s[i..i + c.len_utf8()]).collect()
    } else {
        s.split_whitespace().collect()
    };
    let idx: Vec<usize> = letters
        .iter()
        .map(|l| alphabet.index_of(l).ok_or_else(|| bad(format!("unknown letter {l:?} in word {s:?}"))))
        .collect::<Result<_>>()?;
    if idx.is_empty() {
        return Err(bad("empty word"));
    }
    Ok(Word::from_letters(&idx))
}

/// `{"class", "generators", "terms": [{"word", "coeff", "bracket"}]}`.
pub fn lie_to_json(x: &LieElement<Q>) -> Value {
    let a = x.algebra().alphabet();
    let terms: Vec<Value> = x
        .terms()
        .map(|(w, c)| json!({"word": a.format_word(w), "bracket": a.format_bracketing(w), "coeff": rational_to_json(c)}))
        .collect();
    json!({"class": x.class(), "generators": a.names(), "terms": terms})
}

/// Reads an element into `algebra`; words are Lyndon words of its alphabet.
pub fn lie_from_json_in(v: &Value, algebra: &Arc<FreeLieAlgebra>) -> Result<LieElement<Q>> {
    let mut terms = Vec::new();
    for t in as_array(field(v, "terms")?, "terms")? {
        let w = parse_word(algebra.alphabet(), as_str(field(t, "word")?, "word")?)?;
        terms.push((w, rational_from_json(field(t, "coeff")?)?));
    }
    algebra.element(terms)
}

/// Reads a standalone element; without `"generators"` the alphabet is the
/// set of letters occurring in its words.
pub fn lie_from_json(v: &Value) -> Result<LieElement<Q>> {
    let class = as_usize(field(v, "class")?, "class")?;
    let names: Vec<String> = match v.get("generators") {
        Some(g) => as_array(g, "generators")?.iter().map(|n| as_str(n, "generator").map(String::from)).collect::<Result<_>>()?,
        None => {
            let mut letters: Vec<String> = Vec::new();
            for t in as_array(field(v, "terms")?, "terms")? {
                for c in as_str(field(t, "word")?, "word")?.chars() {
                    if !letters.contains(&c.to_string()) {
                        letters.push(c.to_string());
                    }
                }
            }
            letters
        }
    };
    let algebra = FreeLieAlgebra::on_names(&names, class)?;
    lie_from_json_in(v, &algebra)
}

// ---------------------------------------------------------------- presentations

fn generators_json(a: &Alphabet) -> Value {
    Value::Array(a.generators().iter().map(|g| json!({"name": g.name, "weight": g.weight})).collect())
}

fn presentation_fields(p: &PresentedLie<Q>) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("generators".into(), generators_json(p.alphabet()));
    m.insert("relations".into(), Value::Array(p.relations().iter().map(lie_to_json).collect()));
    m.insert("class".into(), json!(p.class()));
    m
}

/// `{"generators": [{"name", "weight"}], "relations": [...], "class"}`.
pub fn presentation_to_json(p: &PresentedLie<Q>) -> Value {
    Value::Object(presentation_fields(p))
}

pub fn presentation_from_json(v: &Value) -> Result<PresentedLie<Q>> {
    let mut gens = Vec::new();
    for g in as_array(field(v, "generators")?, "generators")? {
        let gen = match g {
            Value::String(name) => Generator::new(name.clone()),
            _ => {
                let name = as_str(field(g, "name")?, "name")?;
                let weight = match g.get("weight") {
                    Some(w) => u32::try_from(as_usize(w, "weight")?).map_err(|_| bad("weight too large"))?,
                    None => 1,
                };
                Generator::weighted(name, weight)
            }
        };
        gens.push(gen);
    }
    let class = as_usize(field(v, "class")?, "class")?;
    let algebra = FreeLieAlgebra::new(Alphabet::new(gens)?, class)?;
    let relations = match v.get("relations") {
        Some(r) => as_array(r, "relations")?.iter().map(|x| lie_from_json_in(x, &algebra)).collect::<Result<_>>()?,
        None => Vec::new(),
    };
    PresentedLie::new(algebra, relations)
}

// ---------------------------------------------------------------- nilpotent algebras

/// `{"dim", "basis", "brackets": {"x,y": {"z": "1"}}, "class"}`; only
/// nonzero brackets `[e_i, e_j]` with `i < j` are written.
pub fn nilpotent_to_json(n: &NilpotentAlgebra<Q>) -> Value {
    let names = n.names();
    let mut brackets = Map::new();
    for i in 0..n.dim() {
        for j in i + 1..n.dim() {
            let v = n.bracket(&n.unit(i), &n.unit(j));
            let mut entry = Map::new();
            for (k, c) in v.iter().enumerate() {
                if !num_traits::Zero::is_zero(c) {
                    entry.insert(names[k].clone(), rational_to_json(c));
                }
            }
            if !entry.is_empty() {
                brackets.insert(format!("{},{}", names[i], names[j]), Value::Object(entry));
            }
        }
    }
    json!({"dim": n.dim(), "basis": names, "brackets": brackets, "class": n.class()})
}

pub fn nilpotent_from_json(v: &Value) -> Result<NilpotentAlgebra<Q>> {
    let names: Vec<String> =
        as_array(field(v, "basis")?, "basis")?.iter().map(|n| as_str(n, "basis name").map(String::from)).collect::<Result<_>>()?;
    if let Some(d) = v.get("dim") {
        if as_usize(d, "dim")? != names.len() {
            return Err(Error::InvalidAlgebra("dim does not match the basis".into()));
        }
    }
    let index = |s: &str| -> Result<usize> {
        names.iter().position(|n| n == s.trim()).ok_or_else(|| Error::InvalidAlgebra(format!("unknown basis element {s:?}")))
    };
    let mut brackets = Vec::new();
    if let Some(b) = v.get("brackets") {
        let obj = b.as_object().ok_or_else(|| bad("brackets must be an object"))?;
        for (key, val) in obj {
            let (x, y) = key.split_once(',').ok_or_else(|| bad(format!("bracket key {key:?} must be \"x,y\"")))?;
            let mut out = vec![Q::from_int(0); names.len()];
            for (k, c) in val.as_object().ok_or_else(|| bad("bracket value must be an object"))? {
                out[index(k)?] += rational_from_json(c)?;
            }
            brackets.push((index(x)?, index(y)?, out));
        }
    }
    let alg = NilpotentAlgebra::new(names, brackets)?;
    if let Some(c) = v.get("class") {
        let c = as_usize(c, "class")?;
        if c != alg.class() {
            return Err(Error::InvalidAlgebra(format!("declared class {c}, computed {}", alg.class())));
        }
    }
    Ok(alg)
}

// ---------------------------------------------------------------- spaces

/// `{"simplices": {"0": [...], ...}, "faces": {name: [d0, ..., dn]}, "basepoint"}`
/// with degenerate faces written as `s0(v)`, `s1 s0(v)`.
pub fn simplicial_to_json(k: &SimplicialSetFin) -> Value {
    let mut simplices = Map::new();
    let mut faces = Map::new();
    for n in 0..=k.dim() {
        simplices.insert(n.to_string(), json!(k.names(n)));
        if n == 0 {
            continue;
        }
        for (x, name) in k.names(n).iter().enumerate() {
            let fs: Vec<String> = k.nondegenerate_faces(n, x).iter().map(|s| k.describe(s)).collect();
            faces.insert(name.clone(), json!(fs));
        }
    }
    json!({"simplices": simplices, "faces": faces, "basepoint": k.names(0)[k.basepoint()]})
}

fn parse_simplex(s: &str, dims: &BTreeMap<String, (usize, usize)>) -> Result<Simplex> {
    let s = s.trim();
    if let Some(&(d, i)) = dims.get(s) {
        return Ok(Simplex::nondegenerate(d, i));
    }
    // s_{i1} s_{i2} ... (name), or nested s1(s0(v))
    let open = s.find('(').ok_or_else(|| Error::InvalidSpace(format!("unknown simplex {s:?}")))?;
    if !s.ends_with(')') {
        return Err(Error::InvalidSpace(format!("unbalanced {s:?}")));
    }
    let inner = parse_simplex(&s[open + 1..s.len() - 1], dims)?;
    let mut ops = Vec::new();
    for op in s[..open].split_whitespace() {
        let i: usize = op
            .strip_prefix('s')
            .and_then(|n| n.parse().ok())
            .ok_or_else(|| Error::InvalidSpace(format!("bad degeneracy {op:?} in {s:?}")))?;
        ops.push(i);
    }
    if ops.is_empty() {
        return Err(Error::InvalidSpace(format!("bad simplex {s:?}")));
    }
    // apply innermost first
    let mut out = inner;
    for &i in ops.iter().rev() {
        if i > out.dim() {
            return Err(Error::InvalidSpace(format!("degeneracy s{i} out of range in {s:?}")));
        }
        let m = out.map.len() - 1;
        out.map = (0..=m + 1).map(|t| out.map[if t <= i { t } else { t - 1 }]).collect();
    }
    Ok(out)
}

pub fn simplicial_from_json(v: &Value) -> Result<SimplicialSetFin> {
    let simplices = field(v, "simplices")?.as_object().ok_or_else(|| bad("simplices must be an object"))?;
    let top = simplices.keys().map(|k| k.parse::<usize>().map_err(|_| bad(format!("bad dimension key {k:?}")))).collect::<Result<Vec<_>>>()?;
    let top = top.into_iter().max().ok_or_else(|| Error::InvalidSpace("no simplices".into()))?;
    let mut names: Vec<Vec<String>> = vec![Vec::new(); top + 1];
    let mut dims = BTreeMap::new();
    for (k, list) in simplices {
        let n: usize = k.parse().expect("checked");
        for (i, s) in as_array(list, "simplices")?.iter().enumerate() {
            let s = as_str(s, "simplex name")?.to_string();
            if s.contains('(') || dims.insert(s.clone(), (n, i)).is_some() {
                return Err(Error::InvalidSpace(format!("bad or duplicate simplex name {s:?}")));
            }
            names[n].push(s);
        }
    }
    let face_obj = match v.get("faces") {
        Some(f) => f.as_object().ok_or_else(|| bad("faces must be an object"))?.clone(),
        None => Map::new(),
    };
    let mut faces: Vec<Vec<Vec<Simplex>>> = vec![Vec::new(); top + 1];
    for n in 1..=top {
        for name in &names[n] {
            let list = face_obj.get(name).ok_or_else(|| Error::InvalidSpace(format!("faces of {name} missing")))?;
            let fs = as_array(list, "faces")?
                .iter()
                .map(|f| parse_simplex(as_str(f, "face")?, &dims))
                .collect::<Result<Vec<_>>>()?;
            faces[n].push(fs);
        }
    }
    let bp = as_str(field(v, "basepoint")?, "basepoint")?;
    let basepoint = names[0].iter().position(|n| n == bp).ok_or_else(|| Error::InvalidSpace(format!("basepoint {bp:?} is not a vertex")))?;
    SimplicialSetFin::new(names, faces, basepoint)
}

/// A space from any of: an explicit simplicial set, a group presentation
/// `{"generators", "relators"}`, or `{"kind": ...}` naming a standard model
/// (`point`, `circle`, `wedge` with `n`, `torus`, `genus_surface` with
/// `genus`, `subdivided_wedge`, `grid_torus`).
pub fn space_from_json(v: &Value) -> Result<SimplicialSetFin> {
    if v.get("simplices").is_some() {
        return simplicial_from_json(v);
    }
    let kind = match v.get("kind").map(|k| as_str(k, "kind")).transpose()? {
        None | Some("presentation") => {
            let generators: Vec<String> = as_array(field(v, "generators")?, "generators")?
                .iter()
                .map(|g| as_str(g, "generator").map(String::from))
                .collect::<Result<_>>()?;
            let mut relators = Vec::new();
            for r in as_array(field(v, "relators")?, "relators")? {
                let letters = match r {
                    Value::String(s) => s.chars().map(|c| c.to_string()).collect(),
                    _ => as_array(r, "relator")?.iter().map(|l| as_str(l, "letter").map(String::from)).collect::<Result<_>>()?,
                };
                relators.push(letters);
            }
            SpaceKind::Presentation { generators, relators }
        }
        Some("point") => SpaceKind::Point,
        Some("circle") => SpaceKind::Circle,
        Some("wedge") => SpaceKind::Wedge(as_usize(field(v, "n")?, "n")?),
        Some("torus") => SpaceKind::Torus,
        Some("genus_surface") => SpaceKind::GenusSurface(as_usize(field(v, "genus")?, "genus")?),
        Some("subdivided_wedge") => SpaceKind::SubdividedWedge,
        Some("grid_torus") => SpaceKind::GridTorus,
        Some(other) => return Err(Error::InvalidSpace(format!("unknown kind {other:?}"))),
    };
    build_space(&kind)
}

// ---------------------------------------------------------------- dg-algebras

/// `{"dims", "d": [matrix per degree, as rows], "products": [{"p","i","q","j","value"}],
/// "weights"?}`; absent products vanish.
pub fn dga_to_json(a: &DgAlgebra<Q>) -> Value {
    let d: Vec<Value> = (0..a.top()).map(|n| matrix_to_json(a.differential(n).expect("below top"))).collect();
    let mut products = Vec::new();
    for (&(p, q), table) in a.products() {
        for (i, row) in table.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if v.iter().any(|c| !num_traits::Zero::is_zero(c)) {
                    products.push(json!({"p": p, "i": i, "q": q, "j": j, "value": vector_to_json(v)}));
                }
            }
        }
    }
    let mut out = json!({"dims": a.dims(), "d": d, "products": products});
    if let Some(w) = a.weights() {
        out["weights"] = json!(w);
    }
    out
}

pub fn dga_from_json(v: &Value) -> Result<DgAlgebra<Q>> {
    let dims: Vec<usize> = as_array(field(v, "dims")?, "dims")?.iter().map(|d| as_usize(d, "dim")).collect::<Result<_>>()?;
    if dims.is_empty() {
        return Err(Error::InvalidInput("algebra has no degrees".into()));
    }
    let top = dims.len() - 1;
    let ds = as_array(field(v, "d")?, "d")?;
    if ds.len() != top {
        return Err(Error::InvalidInput(format!("expected {top} differentials, got {}", ds.len())));
    }
    let d = ds.iter().enumerate().map(|(n, m)| matrix_from_json(m, dims[n + 1], dims[n])).collect::<Result<Vec<_>>>()?;
    let zero = Q::from_int(0);
    let mut products: BTreeMap<(usize, usize), Vec<Vec<Vec<Q>>>> = BTreeMap::new();
    if let Some(ps) = v.get("products") {
        for e in as_array(ps, "products")? {
            let (p, i, q, j) = (
                as_usize(field(e, "p")?, "p")?,
                as_usize(field(e, "i")?, "i")?,
                as_usize(field(e, "q")?, "q")?,
                as_usize(field(e, "j")?, "j")?,
            );
            if p + q > top || i >= dims[p] || j >= dims[q] {
                return Err(Error::InvalidInput(format!("product entry ({p},{i})·({q},{j}) out of range")));
            }
            let value = vector_from_json(field(e, "value")?)?;
            if value.len() != dims[p + q] {
                return Err(Error::InvalidInput(format!("product value for ({p},{i})·({q},{j}) has the wrong length")));
            }
            let table = products.entry((p, q)).or_insert_with(|| vec![vec![vec![zero.clone(); dims[p + q]]; dims[q]]; dims[p]]);
            table[i][j] = value;
        }
    }
    let weights = match v.get("weights") {
        Some(Value::Null) | None => None,
        Some(w) => Some(
            as_array(w, "weights")?
                .iter()
                .map(|row| as_array(row, "weights")?.iter().map(|x| as_i64(x, "weight")).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?,
        ),
    };
    DgAlgebra::new(dims, d, products, weights)
}

// ---------------------------------------------------------------- weights and cup

/// `{"h1": [...], "h2": [...]}`.
pub fn weights_to_json(w: &WeightTable) -> Value {
    json!({"h1": w.h1, "h2": w.h2})
}

pub fn weights_from_json(v: &Value) -> Result<WeightTable> {
    let read = |k: &str| -> Result<Vec<i64>> { as_array(field(v, k)?, k)?.iter().map(|x| as_i64(x, "weight")).collect() };
    Ok(WeightTable { h1: read("h1")?, h2: read("h2")? })
}

/// `{"h1_dim", "h2_dim", "cup"}` with `cup[j][i][k]` the `ξ_j` coefficient
/// of `α_i ∪ α_k`.
pub fn cup_to_json(cup: &[Vec<Vec<Q>>], h1: usize) -> Value {
    let c: Vec<Value> = cup.iter().map(|m| Value::Array(m.iter().map(|r| vector_to_json(r)).collect())).collect();
    json!({"h1_dim": h1, "h2_dim": cup.len(), "cup": c})
}

pub fn cup_from_json(v: &Value) -> Result<(Vec<Vec<Vec<Q>>>, usize)> {
    let h1 = as_usize(field(v, "h1_dim")?, "h1_dim")?;
    let cup: Vec<Vec<Vec<Q>>> = as_array(field(v, "cup")?, "cup")?
        .iter()
        .map(|m| as_array(m, "cup matrix")?.iter().map(vector_from_json).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    if let Some(h2) = v.get("h2_dim") {
        if as_usize(h2, "h2_dim")? != cup.len() {
            return Err(Error::InvalidInput("h2_dim does not match the cup data".into()));
        }
    }
    if cup.iter().any(|m| m.len() != h1 || m.iter().any(|r| r.len() != h1)) {
        return Err(Error::InvalidInput(format!("each cup matrix must be {h1}×{h1}")));
    }
    for m in &cup {
        for i in 0..h1 {
            for k in 0..h1 {
                if m[i][k] != -m[k][i].clone() {
                    return Err(Error::InvalidInput("cup product must be antisymmetric".into()));
                }
            }
        }
    }
    Ok((cup, h1))
}

// ---------------------------------------------------------------- hull

/// The presentation fields plus `"f": {"xi_1": ...}`, `"cup"`, `"weights"`
/// and `"quotient_dims"`.
pub fn hull_to_json(h: &HullResult<Q>) -> Value {
    let mut m = presentation_fields(&h.presentation);
    let f: Map<String, Value> = h.f.iter().enumerate().map(|(j, x)| (format!("xi_{}", j + 1), lie_to_json(x))).collect();
    m.insert("f".into(), Value::Object(f));
    m.insert("cup".into(), cup_to_json(&h.cup, h.h1_dim()));
    m.insert("weights".into(), h.weights.as_ref().map_or(Value::Null, weights_to_json));
    m.insert("quotient_dims".into(), json!(h.quotient_dims()));
    Value::Object(m)
}

pub fn hull_from_json(v: &Value) -> Result<HullResult<Q>> {
    let presentation = presentation_from_json(v)?;
    let algebra = presentation.algebra().clone();
    let fobj = field(v, "f")?.as_object().ok_or_else(|| bad("f must be an object"))?;
    let mut f = Vec::new();
    for j in 1..=fobj.len() {
        let x = fobj.get(&format!("xi_{j}")).ok_or_else(|| bad(format!("f is missing xi_{j}")))?;
        f.push(lie_from_json_in(x, &algebra)?);
    }
    let (cup, _) = cup_from_json(field(v, "cup")?)?;
    let weights = match v.get("weights") {
        Some(Value::Null) | None => None,
        Some(w) => Some(weights_from_json(w)?),
    };
    Ok(HullResult { presentation, f, cup, weights })
}
