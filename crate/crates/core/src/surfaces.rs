//! Checker triangulated surfaces: the geometric model of Product(2).
//!
//! A surface with `2N` faces is encoded by two permutations of the labels
//! `1..N`: plus-triangle `i` meets minus-triangle `red(i)` across its red
//! edge and minus-triangle `yellow(i)` across its yellow edge; blue edges
//! join triangles with equal labels. Relabeling acts by simultaneous
//! conjugation, so unlabeled surfaces are the classes of `S_N × S_N`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::conjugacy::{canonicalize, ConjClass};
use crate::element::{FamilyDescriptor, GroupElement};
use crate::error::{Error, Result};
use crate::exec::{fold_keyed, Config};
use crate::partial::{pb_enumerate, PartialBijection};
use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CheckerSurface {
    red: Permutation,
    yellow: Permutation,
    labeled: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeColor {
    Red,
    Yellow,
    Blue,
}

/// Corners by the two edge colors meeting there; on a plus-triangle the
/// colors run red, yellow, blue clockwise, so the first color of each pair
/// is the clockwise predecessor of the second.
const CORNERS: [(EdgeColor, EdgeColor); 3] =
    [(EdgeColor::Red, EdgeColor::Yellow), (EdgeColor::Yellow, EdgeColor::Blue), (EdgeColor::Blue, EdgeColor::Red)];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ComponentTopology {
    pub faces: usize,
    pub edges: usize,
    pub vertices: usize,
    pub euler: i64,
    pub genus: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TopologyReport {
    pub components: Vec<ComponentTopology>,
    pub faces: usize,
    pub edges: usize,
    pub vertices: usize,
    pub euler: i64,
}

impl CheckerSurface {
    /// A labeled surface from its red and yellow permutations.
    pub fn from_pair(red: Permutation, yellow: Permutation) -> Result<Self> {
        if red.degree() != yellow.degree() {
            return Err(Error::DegreeMismatch(red.degree(), yellow.degree()));
        }
        Ok(CheckerSurface { red, yellow, labeled: true })
    }

    /// The unlabeled surface of a Product(2) class (its canonical pair).
    pub fn from_class(c: &ConjClass) -> Result<Self> {
        Self::from_element(c.rep()).map(|s| CheckerSurface { labeled: false, ..s })
    }

    /// The labeled surface of a Product(2) element.
    pub fn from_element(g: &GroupElement) -> Result<Self> {
        if g.family() != &(FamilyDescriptor::Product { rows: 2 }) {
            return Err(Error::WrongFamily(g.family().to_string()));
        }
        let (red, yellow) = (g.row(0).expect("row 0"), g.row(1).expect("row 1"));
        Ok(CheckerSurface { red, yellow, labeled: true })
    }

    pub fn to_element(&self) -> GroupElement {
        let family = FamilyDescriptor::Product { rows: 2 };
        if self.size() == 0 {
            return GroupElement::identity(&family, 0);
        }
        GroupElement::from_rows(&family, &[self.red.clone(), self.yellow.clone()]).expect("equal degrees")
    }

    /// The class of `(red, yellow)`; independent of the labeling.
    pub fn to_class(&self, config: &Config) -> Result<ConjClass> {
        canonicalize(&self.to_element(), config)
    }

    /// Forgets the labeling: replaces the pair by its canonical representative.
    pub fn unlabeled(&self, config: &Config) -> Result<Self> {
        Self::from_class(&self.to_class(config)?)
    }

    /// Number of plus-triangles `N`.
    pub fn size(&self) -> usize {
        self.red.degree()
    }

    pub fn red(&self) -> &Permutation {
        &self.red
    }

    pub fn yellow(&self) -> &Permutation {
        &self.yellow
    }

    pub fn is_labeled(&self) -> bool {
        self.labeled
    }

    /// Renames plus-triangle `i` to `τ(i)`.
    pub fn relabel(&self, tau: &Permutation) -> Result<Self> {
        let conj = |p: &Permutation| tau.product(p)?.product(&tau.inverse());
        Ok(CheckerSurface { red: conj(&self.red)?, yellow: conj(&self.yellow)?, labeled: true })
    }

    /// Disjoint union; the labels of `other` are shifted past ours.
    pub fn disjoint_union(&self, other: &CheckerSurface) -> CheckerSurface {
        let n = self.size() as u32;
        let join = |a: &Permutation, b: &Permutation| {
            let images = a.images().iter().copied().chain(b.images().iter().map(|&y| y + n)).collect();
            Permutation::from_images(images).expect("block sum of permutations")
        };
        CheckerSurface {
            red: join(&self.red, &other.red),
            yellow: join(&self.yellow, &other.yellow),
            labeled: self.labeled && other.labeled,
        }
    }

    /// Plus/minus neighbor across an edge: plus `i` → minus `π(i)`.
    fn across(&self, color: EdgeColor) -> &[u32] {
        match color {
            EdgeColor::Red => self.red.images(),
            EdgeColor::Yellow => self.yellow.images(),
            EdgeColor::Blue => &[],
        }
    }

    fn plus_to_minus(&self, color: EdgeColor, i: u32) -> u32 {
        match color {
            EdgeColor::Blue => i,
            c => self.across(c)[i as usize],
        }
    }

    /// The corner-rotation permutation on the `6N` corner darts.
    ///
    /// Dart `3t + c` is corner `c` of triangle `t` (plus `i` is `t = i`,
    /// minus `j` is `t = N + j`). Going around a vertex, a plus corner is
    /// left across its first color and a minus corner across its second.
    pub fn corner_rotation(&self) -> Vec<u32> {
        let n = self.size();
        let red_inv = self.red.inverse();
        let yellow_inv = self.yellow.inverse();
        let minus_to_plus = |color: EdgeColor, j: u32| match color {
            EdgeColor::Red => red_inv.apply(j),
            EdgeColor::Yellow => yellow_inv.apply(j),
            EdgeColor::Blue => j,
        };
        let mut rot = vec![0u32; 6 * n];
        for (c, &(first, second)) in CORNERS.iter().enumerate() {
            for i in 0..n as u32 {
                let m = self.plus_to_minus(first, i);
                rot[3 * i as usize + c] = 3 * (n as u32 + m) + c as u32;
                let p = minus_to_plus(second, i);
                rot[3 * (n + i as usize) + c] = 3 * p + c as u32;
            }
        }
        rot
    }

    /// Components (smallest first), Euler characteristic and genus from the
    /// dart structure.
    pub fn topology(&self) -> TopologyReport {
        let n = self.size();
        // components are orbits of <red, yellow> on labels (blue joins equal labels)
        let (red_inv, yellow_inv) = (self.red.inverse(), self.yellow.inverse());
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            comp[start] = count;
            while let Some(x) = stack.pop() {
                let x = x as u32;
                for next in [self.red.apply(x), self.yellow.apply(x), red_inv.apply(x), yellow_inv.apply(x)] {
                    if comp[next as usize] == usize::MAX {
                        comp[next as usize] = count;
                        stack.push(next as usize);
                    }
                }
            }
            count += 1;
        }
        let rot = self.corner_rotation();
        let mut vertices = vec![0usize; count];
        let mut seen = vec![false; rot.len()];
        for d in 0..rot.len() {
            if seen[d] {
                continue;
            }
            let label = (d / 3) % n.max(1);
            vertices[comp[label]] += 1;
            let mut x = d;
            while !seen[x] {
                seen[x] = true;
                x = rot[x] as usize;
            }
        }
        let mut labels_per = vec![0usize; count];
        for &c in &comp {
            labels_per[c] += 1;
        }
        let mut components: Vec<ComponentTopology> = (0..count)
            .map(|c| {
                let (faces, edges, v) = (2 * labels_per[c], 3 * labels_per[c], vertices[c]);
                let euler = v as i64 - edges as i64 + faces as i64;
                ComponentTopology { faces, edges, vertices: v, euler, genus: (2 - euler) / 2 }
            })
            .collect();
        components.sort();
        TopologyReport {
            faces: 2 * n,
            edges: 3 * n,
            vertices: vertices.iter().sum(),
            euler: components.iter().map(|c| c.euler).sum(),
            components,
        }
    }

    /// Glues minus-triangle `a` of `self` to plus-triangle `λ(a)` of `other`
    /// for every `a ∈ dom λ`, removes the glued pairs and relabels by blue
    /// adjacency: our labels first, then the surviving plus-triangles of
    /// `other` in increasing order.
    pub fn glue(&self, other: &CheckerSurface, lambda: &PartialBijection) -> Result<CheckerSurface> {
        let (n, k) = (self.size(), other.size());
        if lambda.source() != n || lambda.target() != k {
            return Err(Error::SizeMismatch(format!(
                "λ must map J_{n} to J_{k}, got J_{} to J_{}",
                lambda.source(),
                lambda.target()
            )));
        }
        let inv = lambda.inverse();
        let big_m = n + k - lambda.rank();
        let mut other_label = vec![0u32; k];
        let mut next = n as u32;
        for (j, slot) in other_label.iter_mut().enumerate() {
            *slot = inv.get(j as u32).unwrap_or_else(|| {
                next += 1;
                next - 1
            });
        }
        let walk = |color: EdgeColor, from: Tri| -> Tri {
            let mut t = self.cross(other, color, from);
            loop {
                t = match t {
                    Tri::LeftMinus(a) => match lambda.get(a) {
                        Some(j) => self.cross(other, color, Tri::RightPlus(j)),
                        None => return t,
                    },
                    Tri::RightPlus(j) => match inv.get(j) {
                        Some(a) => self.cross(other, color, Tri::LeftMinus(a)),
                        None => return t,
                    },
                    _ => return t,
                }
            }
        };
        let plus_label = |t: Tri| match t {
            Tri::LeftPlus(i) => i,
            Tri::RightPlus(j) => other_label[j as usize],
            _ => unreachable!("walks from minus-triangles end on plus-triangles"),
        };
        let minus_label = |t: Tri| plus_label(walk(EdgeColor::Blue, t));
        let mut red = vec![0u32; big_m];
        let mut yellow = vec![0u32; big_m];
        let pluses = (0..n as u32)
            .map(Tri::LeftPlus)
            .chain((0..k as u32).filter(|&j| inv.get(j).is_none()).map(Tri::RightPlus));
        for p in pluses {
            let l = plus_label(p) as usize;
            red[l] = minus_label(walk(EdgeColor::Red, p));
            yellow[l] = minus_label(walk(EdgeColor::Yellow, p));
        }
        CheckerSurface::from_pair(Permutation::from_images(red)?, Permutation::from_images(yellow)?)
    }

    fn cross(&self, other: &CheckerSurface, color: EdgeColor, t: Tri) -> Tri {
        let back = |s: &CheckerSurface, j: u32| match color {
            EdgeColor::Blue => j,
            c => s.across(c).iter().position(|&y| y == j).expect("bijection") as u32,
        };
        match t {
            Tri::LeftPlus(i) => Tri::LeftMinus(self.plus_to_minus(color, i)),
            Tri::LeftMinus(a) => Tri::LeftPlus(back(self, a)),
            Tri::RightPlus(j) => Tri::RightMinus(other.plus_to_minus(color, j)),
            Tri::RightMinus(b) => Tri::RightPlus(back(other, b)),
        }
    }

    /// JSON `{N, red, yellow, labeled, topology}` with 1-based image lists.
    pub fn to_json(&self) -> String {
        let doc = SurfaceJson {
            n: self.size(),
            red: self.red.images().iter().map(|y| y + 1).collect(),
            yellow: self.yellow.images().iter().map(|y| y + 1).collect(),
            labeled: self.labeled,
            topology: Some(self.topology()),
        };
        serde_json::to_string_pretty(&doc).expect("plain struct serializes")
    }

    pub fn from_json(text: &str) -> Result<CheckerSurface> {
        let doc: SurfaceJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let to_perm = |v: &[u32]| {
            if v.len() != doc.n || v.contains(&0) {
                return Err(Error::Parse("image lists must have N entries, numbered from 1".into()));
            }
            Permutation::from_images(v.iter().map(|y| y - 1).collect())
        };
        let s = CheckerSurface::from_pair(to_perm(&doc.red)?, to_perm(&doc.yellow)?)?;
        Ok(CheckerSurface { labeled: doc.labeled, ..s })
    }

    /// Face-adjacency multigraph in DOT.
    pub fn to_dot(&self) -> String {
        let n = self.size();
        let mut out = String::from("graph surface {\n");
        for i in 1..=n {
            writeln!(out, "  p{i};").unwrap();
        }
        for i in 1..=n {
            writeln!(out, "  m{i};").unwrap();
        }
        for i in 0..n as u32 {
            for (color, name) in [(EdgeColor::Red, "red"), (EdgeColor::Yellow, "yellow"), (EdgeColor::Blue, "blue")] {
                let j = self.plus_to_minus(color, i);
                writeln!(out, "  p{} -- m{} [color={name}];", i + 1, j + 1).unwrap();
            }
        }
        out.push_str("}\n");
        out
    }

    pub fn export(&self, format: ExportFormat) -> String {
        match format {
            ExportFormat::Json => self.to_json(),
            ExportFormat::Dot => self.to_dot(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tri {
    LeftPlus(u32),
    LeftMinus(u32),
    RightPlus(u32),
    RightMinus(u32),
}

#[derive(Serialize, Deserialize)]
struct SurfaceJson {
    #[serde(rename = "N")]
    n: usize,
    red: Vec<u32>,
    yellow: Vec<u32>,
    #[serde(default = "default_labeled")]
    labeled: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    topology: Option<TopologyReport>,
}

fn default_labeled() -> bool {
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Json,
    Dot,
}

impl FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(ExportFormat::Json),
            "dot" => Ok(ExportFormat::Dot),
            other => Err(Error::UnsupportedFormat(other.to_owned())),
        }
    }
}

/// `R * Q = Σ_{λ ∈ PB(R₋, Q₊)} R ⊛_λ Q`, by direct gluing of surfaces,
/// collected as unlabeled surfaces with multiplicities.
///
/// With products read right to left, `R ⊛_λ Q` is the class of
/// `q ⊛_λ r`, so the expansion matches `star(B[q], B[r])`.
pub fn surface_star(r: &CheckerSurface, q: &CheckerSurface, config: &Config) -> Result<Vec<(CheckerSurface, u64)>> {
    let lambdas = pb_enumerate(r.size(), q.size());
    let counts: BTreeMap<ConjClass, u64> = fold_keyed(&lambdas, config.strategy, |lambda, acc| {
        let glued = r.glue(q, lambda)?;
        *acc.entry(glued.to_class(config)?).or_insert(0) += 1;
        Ok(())
    })?;
    counts.into_iter().map(|(c, m)| Ok((CheckerSurface::from_class(&c)?, m))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conjugacy::parse_class;

    fn surf(red: &str, yellow: &str, n: usize) -> CheckerSurface {
        CheckerSurface::from_pair(Permutation::from_cycles(red, n).unwrap(), Permutation::from_cycles(yellow, n).unwrap())
            .unwrap()
    }

    #[test]
    fn two_triangle_sphere() {
        let s = surf("e", "e", 1);
        let t = s.topology();
        assert_eq!(t.components.len(), 1);
        assert_eq!((t.vertices, t.edges, t.faces, t.euler), (3, 3, 2, 2));
        assert_eq!(t.components[0].genus, 0);
    }

    #[test]
    fn two_spheres() {
        let t = surf("e", "e", 2).topology();
        assert_eq!(t.components.len(), 2);
        assert!(t.components.iter().all(|c| c.euler == 2 && c.genus == 0 && c.faces == 2));
    }

    #[test]
    fn transposition_pair() {
        let t = surf("(1 2)", "(1 2)", 2).topology();
        assert_eq!(t.components.len(), 1);
        assert_eq!(t.faces, 4);
        // red, yellow and yellow⁻¹·red have 1, 1 and 2 cycles
        assert_eq!(t.vertices, 4);
        assert_eq!(t.components[0].genus, 0);
    }

    #[test]
    fn torus_and_sphere() {
        // yellow⁻¹·red = (1 2 3)·(1 2 3) = (1 3 2): one vertex of each type
        let t = surf("(1 2 3)", "(1 3 2)", 3).topology();
        assert_eq!((t.vertices, t.euler), (3, 0));
        assert_eq!(t.components[0].genus, 1);
        let t = surf("(1 2)", "(2 3)", 3).topology();
        assert_eq!(t.components.len(), 1);
        assert_eq!(t.vertices, 2 + 2 + 1);
        assert_eq!(t.components[0].genus, 0);
    }

    #[test]
    fn class_roundtrip_and_wrong_family() {
        let cfg = Config::default();
        let f2 = FamilyDescriptor::product(2).unwrap();
        let c = parse_class(&f2, "(1 2)|(1 2)", &cfg).unwrap();
        let s = CheckerSurface::from_class(&c).unwrap();
        assert_eq!(s.size(), 2);
        assert_eq!(s.to_class(&cfg).unwrap(), c);
        let f1 = FamilyDescriptor::product(1).unwrap();
        let c1 = parse_class(&f1, "(1 2)", &cfg).unwrap();
        assert!(matches!(CheckerSurface::from_class(&c1), Err(Error::WrongFamily(_))));
        let sphere = surf("e", "e", 1);
        assert_eq!(sphere.to_class(&cfg).unwrap(), parse_class(&f2, "e|e@1", &cfg).unwrap());
    }

    #[test]
    fn dot_sphere() {
        let dot = surf("e", "e", 1).to_dot();
        assert_eq!(
            dot,
            "graph surface {\n  p1;\n  m1;\n  p1 -- m1 [color=red];\n  p1 -- m1 [color=yellow];\n  p1 -- m1 [color=blue];\n}\n"
        );
    }

    #[test]
    fn json_roundtrip() {
        let s = surf("(1 2)", "e", 3);
        assert_eq!(CheckerSurface::from_json(&s.to_json()).unwrap(), s);
        assert!(CheckerSurface::from_json(r#"{"N":2,"red":[1],"yellow":[1,2]}"#).is_err());
        assert!(matches!("svg".parse::<ExportFormat>(), Err(Error::UnsupportedFormat(_))));
    }

    #[test]
    fn sphere_square() {
        let cfg = Config::default();
        let s = surf("e", "e", 1);
        let prod = surface_star(&s, &s, &cfg).unwrap();
        assert_eq!(prod.len(), 2);
        assert_eq!(prod[0].0.size(), 1);
        assert_eq!(prod[1].0.size(), 2);
        assert_eq!(prod[1].0.topology().components.len(), 2);
        assert!(prod.iter().all(|(_, m)| *m == 1));
    }

    #[test]
    fn full_gluing_composes_left_then_right() {
        let r = surf("(1 2)", "e", 2);
        let q = surf("e", "(1 2)", 2);
        let g = r.glue(&q, &PartialBijection::identity(2)).unwrap();
        // plus i -> red minus r(i) = plus r(i) of q -> red minus q(r(i))
        assert_eq!(g.red(), &q.red().product(r.red()).unwrap());
        assert_eq!(g.yellow(), &q.yellow().product(r.yellow()).unwrap());
    }
}
