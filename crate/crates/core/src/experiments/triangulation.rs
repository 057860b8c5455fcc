use std::collections::HashMap;

use nalgebra::Vector3;
use serde::Serialize;

use super::ExperimentError;
use crate::cohomology::{PosetSemigroup, TwoCycle};
use crate::geom::{geodesic_between, integrate_over_loop, Point, Surface};
use crate::paths::Path;

pub const MAX_LEVEL: u32 = 5;

/// A subdivided icosahedron projected to the unit sphere, with its face
/// poset as a semigroup. Poset objects are numbered vertices first, then
/// edges, then faces.
#[derive(Debug, Clone, Serialize)]
pub struct TriangulatedSphere {
    pub level: u32,
    pub vertices: Vec<Vector3<f64>>,
    /// Sorted vertex pairs.
    pub edges: Vec<[usize; 2]>,
    /// Vertex triples, counterclockwise seen from outside.
    pub faces: Vec<[usize; 3]>,
    /// Integral of the area form over each face, by quadrature.
    pub face_areas: Vec<f64>,
    #[serde(skip)]
    pub poset: PosetSemigroup,
    #[serde(skip)]
    pub barycenters: Vec<Vector3<f64>>,
    /// Σ ε [(v,e)|(e,f)] over all flags v < e < f, ε the orientation of the
    /// barycenters.
    #[serde(skip)]
    pub fundamental_cycle: TwoCycle,
}

impl TriangulatedSphere {
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    pub fn total_area(&self) -> f64 {
        self.face_areas.iter().sum()
    }

    pub fn edge_object(&self, e: usize) -> usize {
        self.vertices.len() + e
    }

    pub fn face_object(&self, f: usize) -> usize {
        self.vertices.len() + self.edges.len() + f
    }

    /// The geodesic from the barycenter of `x` to that of `y` representing
    /// poset element `a = (x, y)`.
    pub fn element_path(&self, a: usize) -> Result<Option<Path>, ExperimentError> {
        let Some((x, y)) = self.poset.pair(a) else {
            return Ok(None);
        };
        let s = Surface::unit_sphere();
        let (p, q) = (Point::Sphere(self.barycenters[x]), Point::Sphere(self.barycenters[y]));
        if x == y {
            return Ok(Some(Path::point(s, p)?));
        }
        Ok(Some(Path::from_segments(s, vec![geodesic_between(&s, &p, &q, None)?])?))
    }

    /// Longest geodesic representing a poset element.
    pub fn max_cell_length(&self) -> f64 {
        (1..self.poset_order())
            .filter_map(|a| self.poset.pair(a))
            .map(|(x, y)| self.barycenters[x].angle(&self.barycenters[y]))
            .fold(0.0, f64::max)
    }

    fn poset_order(&self) -> usize {
        use crate::cohomology::Semigroup;
        self.poset.order()
    }
}

fn icosahedron() -> (Vec<Vector3<f64>>, Vec<[usize; 3]>) {
    let t = (1.0 + 5f64.sqrt()) / 2.0;
    let v = [
        [-1.0, t, 0.0],
        [1.0, t, 0.0],
        [-1.0, -t, 0.0],
        [1.0, -t, 0.0],
        [0.0, -1.0, t],
        [0.0, 1.0, t],
        [0.0, -1.0, -t],
        [0.0, 1.0, -t],
        [t, 0.0, -1.0],
        [t, 0.0, 1.0],
        [-t, 0.0, -1.0],
        [-t, 0.0, 1.0],
    ];
    let faces = vec![
        [0, 11, 5],
        [0, 5, 1],
        [0, 1, 7],
        [0, 7, 10],
        [0, 10, 11],
        [1, 5, 9],
        [5, 11, 4],
        [11, 10, 2],
        [10, 7, 6],
        [7, 1, 8],
        [3, 9, 4],
        [3, 4, 2],
        [3, 2, 6],
        [3, 6, 8],
        [3, 8, 9],
        [4, 9, 5],
        [2, 4, 11],
        [6, 2, 10],
        [8, 6, 7],
        [9, 8, 1],
    ];
    (v.iter().map(|c| Vector3::from(*c).normalize()).collect(), faces)
}

fn subdivide(vertices: &mut Vec<Vector3<f64>>, faces: &[[usize; 3]]) -> Vec<[usize; 3]> {
    let mut mid: HashMap<(usize, usize), usize> = HashMap::new();
    let mut midpoint = |a: usize, b: usize, vertices: &mut Vec<Vector3<f64>>| {
        *mid.entry((a.min(b), a.max(b))).or_insert_with(|| {
            vertices.push((vertices[a] + vertices[b]).normalize());
            vertices.len() - 1
        })
    };
    let mut out = Vec::with_capacity(4 * faces.len());
    for &[a, b, c] in faces {
        let ab = midpoint(a, b, vertices);
        let bc = midpoint(b, c, vertices);
        let ca = midpoint(c, a, vertices);
        out.extend([[a, ab, ca], [b, bc, ab], [c, ca, bc], [ab, bc, ca]]);
    }
    out
}

/// Builds the level-`k` subdivision (20·4ᵏ faces), checks it is a sphere,
/// and assembles the face-poset semigroup and its fundamental 2-cycle.
pub fn build_triangulated_sphere(level: u32) -> Result<TriangulatedSphere, ExperimentError> {
    if level > MAX_LEVEL {
        return Err(ExperimentError::LevelTooLarge(level));
    }
    let (mut vertices, mut faces) = icosahedron();
    for _ in 0..level {
        faces = subdivide(&mut vertices, &faces);
    }
    for f in &mut faces {
        let [a, b, c] = *f;
        if vertices[a].dot(&vertices[b].cross(&vertices[c])) < 0.0 {
            f.swap(1, 2);
        }
    }

    let mut edge_index: HashMap<[usize; 2], usize> = HashMap::new();
    let mut edges = Vec::new();
    let mut face_edges = Vec::with_capacity(faces.len());
    for &[a, b, c] in &faces {
        let mut fe = [0; 3];
        for (slot, (u, v)) in [(a, b), (b, c), (c, a)].into_iter().enumerate() {
            let key = [u.min(v), u.max(v)];
            fe[slot] = *edge_index.entry(key).or_insert_with(|| {
                edges.push(key);
                edges.len() - 1
            });
        }
        face_edges.push(fe);
    }
    let (nv, ne, nf) = (vertices.len(), edges.len(), faces.len());
    if nv as i64 - ne as i64 + nf as i64 != 2 {
        return Err(ExperimentError::InvalidInput("subdivision is not a sphere".into()));
    }

    let s = Surface::unit_sphere();
    let face_areas = faces
        .iter()
        .map(|&[a, b, c]| {
            let p = |i: usize| Point::Sphere(vertices[i]);
            let segs = [
                geodesic_between(&s, &p(a), &p(b), None)?,
                geodesic_between(&s, &p(b), &p(c), None)?,
                geodesic_between(&s, &p(c), &p(a), None)?,
            ];
            Ok(integrate_over_loop(&s, &segs, 1e-12)?.value)
        })
        .collect::<Result<Vec<f64>, ExperimentError>>()?;

    let eo = |e: usize| nv + e;
    let fo = |f: usize| nv + ne + f;
    let mut relations = Vec::with_capacity(2 * ne + 6 * nf);
    for (e, &[u, v]) in edges.iter().enumerate() {
        relations.push((u, eo(e)));
        relations.push((v, eo(e)));
    }
    for (f, (verts, fe)) in faces.iter().zip(&face_edges).enumerate() {
        for &e in fe {
            relations.push((eo(e), fo(f)));
        }
        for &v in verts {
            relations.push((v, fo(f)));
        }
    }
    let poset = PosetSemigroup::new(nv + ne + nf, relations)?;

    let mut barycenters = vertices.clone();
    barycenters.extend(edges.iter().map(|&[u, v]| (vertices[u] + vertices[v]).normalize()));
    barycenters.extend(faces.iter().map(|&[a, b, c]| (vertices[a] + vertices[b] + vertices[c]).normalize()));

    let mut terms = Vec::with_capacity(6 * nf);
    for (f, fe) in face_edges.iter().enumerate() {
        for &e in fe {
            for v in edges[e] {
                let eps = barycenters[v].dot(&barycenters[eo(e)].cross(&barycenters[fo(f)]));
                let ve = poset.element(v, eo(e)).expect("vertex lies on edge");
                let ef = poset.element(eo(e), fo(f)).expect("edge lies on face");
                terms.push(((ve, ef), if eps > 0.0 { 1 } else { -1 }));
            }
        }
    }
    let fundamental_cycle = TwoCycle::new(&poset, terms)?;

    Ok(TriangulatedSphere {
        level,
        vertices,
        edges,
        faces,
        face_areas,
        poset,
        barycenters,
        fundamental_cycle,
    })
}
