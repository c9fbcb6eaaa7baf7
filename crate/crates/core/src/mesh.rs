//! Closed triangle mesh of the oloid boundary, used as a discrete oracle for
//! the surface area and volume, and exported as Wavefront OBJ.
//!
//! The mesh is built from a regular grid in `(m, u)` per sheet, with
//! `t = (2π/3)·sin(πu/2)`. The grading clusters nodes quadratically toward
//! `t = ±2π/3`, where `ω₃ ~ √(2π/3 − |t|)`, so the height profile is smooth in
//! `u` and both discrete measures converge at second order.
//!
//! Welds, all by exact coordinate key:
//! * `m = 0` (the `k_A` edge) and `t = ±2π/3`: both sheets lie in `z = 0`.
//! * `m = 1` (the `k_B` edge): `t` and `−t` reach the same point, so each
//!   sheet folds onto itself there.

use std::collections::HashMap;
use std::f64::consts::FRAC_PI_2;
use std::io::{self, BufRead, Write};

use thiserror::Error;

use crate::surface::{omega, Point3, Vec3, T_MAX};

#[derive(Debug, Error)]
pub enum MeshError {
    #[error("mesh is not closed: {0} half-edges lack an opposite")]
    Open(usize),
    #[error("edge ({0}, {1}) is used by more than two triangles or twice in one direction")]
    NonManifold(u32, u32),
    #[error("OBJ line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}

#[derive(Debug, Clone, PartialEq)]
pub struct TriMesh {
    pub vertices: Vec<Point3>,
    pub triangles: Vec<[u32; 3]>,
    /// Grid resolution `(n_m, n_t)` the mesh was built with; `(0, 0)` for
    /// meshes read from a file.
    pub resolution: (usize, usize),
}

/// Bit pattern of a coordinate with `−0.0` folded onto `+0.0`.
fn key(p: Point3) -> [u64; 3] {
    [(p.x + 0.0).to_bits(), (p.y + 0.0).to_bits(), (p.z + 0.0).to_bits()]
}

impl TriMesh {
    /// Mesh of the unit oloid with `n_m` intervals along the segments and
    /// `n_t` intervals across them per sheet.
    ///
    /// An odd `n_t` is rounded up so that `t = 0`, where the `k_B` fold turns
    /// back, falls on a grid line.
    pub fn oloid(n_m: usize, n_t: usize) -> TriMesh {
        let n_m = n_m.max(1);
        let n_t = (n_t.max(2) + 1) & !1;
        let cols = n_t + 1;

        let mut index: HashMap<[u64; 3], u32> = HashMap::new();
        let mut vertices = Vec::new();
        // Per sheet, grid (i, j) → vertex index.
        let mut grid = [vec![0u32; (n_m + 1) * cols], vec![0u32; (n_m + 1) * cols]];

        for (sheet, ids) in grid.iter_mut().enumerate() {
            let sign = if sheet == 0 { 1.0 } else { -1.0 };
            for i in 0..=n_m {
                let m = i as f64 / n_m as f64;
                for j in 0..=n_t {
                    let u = (2 * j as i64 - n_t as i64) as f64 / n_t as f64;
                    let t = (T_MAX * (FRAC_PI_2 * u.abs()).sin()).copysign(u);
                    let w = omega(m, t);
                    let p = Vec3::new(w.x, w.y, sign * w.z);
                    let id = *index.entry(key(p)).or_insert_with(|| {
                        vertices.push(p);
                        (vertices.len() - 1) as u32
                    });
                    ids[i * cols + j] = id;
                }
            }
        }

        let mut triangles = Vec::with_capacity(4 * n_m * n_t);
        for (sheet, ids) in grid.iter().enumerate() {
            for i in 0..n_m {
                for j in 0..n_t {
                    let v00 = ids[i * cols + j];
                    let v10 = ids[(i + 1) * cols + j];
                    let v01 = ids[i * cols + j + 1];
                    let v11 = ids[(i + 1) * cols + j + 1];
                    // Diagonals mirror across t = 0 so no triangle has all
                    // three corners on the welded z = 0 boundary.
                    let pair = if 2 * j < n_t {
                        [[v00, v10, v11], [v00, v11, v01]]
                    } else {
                        [[v00, v10, v01], [v10, v11, v01]]
                    };
                    for [a, b, c] in pair {
                        // Counter-clockwise in (m, t) faces along ω_m × ω_t, which
                        // points inward on the upper sheet; the lower sheet is
                        // mirrored, so its winding is already outward.
                        triangles.push(if sheet == 0 { [a, c, b] } else { [a, b, c] });
                    }
                }
            }
        }

        TriMesh { vertices, triangles, resolution: (n_m, n_t) }
    }

    /// Checks that every directed edge has exactly one opposite partner,
    /// i.e. the mesh is a closed, consistently oriented 2-manifold.
    pub fn check_closed(&self) -> Result<(), MeshError> {
        let mut half_edges: HashMap<(u32, u32), u32> = HashMap::new();
        for tri in &self.triangles {
            for k in 0..3 {
                let e = (tri[k], tri[(k + 1) % 3]);
                let count = half_edges.entry(e).or_insert(0);
                *count += 1;
                if *count > 1 {
                    return Err(MeshError::NonManifold(e.0, e.1));
                }
            }
        }
        let unmatched = half_edges.keys().filter(|&&(a, b)| !half_edges.contains_key(&(b, a))).count();
        if unmatched > 0 {
            return Err(MeshError::Open(unmatched));
        }
        Ok(())
    }

    pub fn euler_characteristic(&self) -> i64 {
        let mut edges: Vec<(u32, u32)> = self
            .triangles
            .iter()
            .flat_map(|t| (0..3).map(move |k| (t[k].min(t[(k + 1) % 3]), t[k].max(t[(k + 1) % 3]))))
            .collect();
        edges.sort_unstable();
        edges.dedup();
        self.vertices.len() as i64 - edges.len() as i64 + self.triangles.len() as i64
    }

    fn corners(&self, tri: &[u32; 3]) -> [Point3; 3] {
        tri.map(|i| self.vertices[i as usize])
    }

    /// Enclosed volume as a sum of signed tetrahedra against the origin.
    pub fn volume(&self) -> Result<f64, MeshError> {
        self.check_closed()?;
        Ok(self
            .triangles
            .iter()
            .map(|tri| {
                let [a, b, c] = self.corners(tri);
                a.dot(b.cross(c))
            })
            .sum::<f64>()
            / 6.0)
    }

    pub fn area(&self) -> f64 {
        self.triangles
            .iter()
            .map(|tri| {
                let [a, b, c] = self.corners(tri);
                0.5 * (b - a).cross(c - a).norm()
            })
            .sum()
    }

    /// Writes `v x y z` lines followed by 1-based `f i j k` lines.
    pub fn write_obj<W: Write>(&self, mut sink: W) -> io::Result<()> {
        for v in &self.vertices {
            writeln!(sink, "v {:.16e} {:.16e} {:.16e}", v.x, v.y, v.z)?;
        }
        for [a, b, c] in &self.triangles {
            writeln!(sink, "f {} {} {}", a + 1, b + 1, c + 1)?;
        }
        sink.flush()
    }

    /// Reads the `v` and triangular `f` records of an OBJ file; other record
    /// types are skipped. Face entries like `7/2/7` use the vertex index.
    pub fn read_obj<R: BufRead>(source: R) -> Result<TriMesh, MeshError> {
        let mut vertices = Vec::new();
        let mut triangles = Vec::new();
        for (n, line) in source.lines().enumerate() {
            let line = line?;
            let parse_err = |reason: String| MeshError::Parse { line: n + 1, reason };
            let mut fields = line.split_whitespace();
            match fields.next() {
                Some("v") => {
                    let c: Vec<f64> = fields
                        .take(3)
                        .map(|s| s.parse::<f64>().map_err(|e| parse_err(e.to_string())))
                        .collect::<Result<_, _>>()?;
                    if c.len() != 3 {
                        return Err(parse_err("vertex needs three coordinates".into()));
                    }
                    vertices.push(Vec3::new(c[0], c[1], c[2]));
                }
                Some("f") => {
                    let idx: Vec<u32> = fields
                        .map(|s| {
                            let head = s.split('/').next().unwrap_or(s);
                            match head.parse::<u32>() {
                                Ok(i) if i >= 1 => Ok(i - 1),
                                _ => Err(parse_err(format!("bad vertex index {s:?}"))),
                            }
                        })
                        .collect::<Result<_, _>>()?;
                    if idx.len() != 3 {
                        return Err(parse_err("only triangular faces are supported".into()));
                    }
                    triangles.push([idx[0], idx[1], idx[2]]);
                }
                _ => {}
            }
        }
        if let Some(bad) = triangles.iter().flatten().find(|&&i| i as usize >= vertices.len()) {
            return Err(MeshError::Parse { line: 0, reason: format!("face references missing vertex {}", bad + 1) });
        }
        Ok(TriMesh { vertices, triangles, resolution: (0, 0) })
    }
}

pub fn build_mesh(n_m: usize, n_t: usize) -> TriMesh {
    TriMesh::oloid(n_m, n_t)
}

pub fn mesh_volume(mesh: &TriMesh) -> Result<f64, MeshError> {
    mesh.volume()
}

pub fn mesh_area(mesh: &TriMesh) -> f64 {
    mesh.area()
}

pub fn export_obj<W: Write>(mesh: &TriMesh, sink: W) -> io::Result<()> {
    mesh.write_obj(sink)
}
