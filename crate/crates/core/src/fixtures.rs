//! Built-in diagram library.
//!
//! These fixtures are shipped both for tests and (as JSON) for the CLI. The
//! closed ones are oriented surfaces with all bounded faces traversed
//! counterclockwise in the plane; outer faces of spherical drawings get the
//! reversed cycle, which is what the regularity rule forces.

use std::collections::HashMap;
use std::sync::Arc;

use crate::complex::{CellComplex, CellId, Diagram};

struct DiagramBuilder {
    vertices: Vec<(CellId, [f64; 2])>,
    edges: Vec<(CellId, CellId, CellId)>,
    open_edges: Vec<(CellId, CellId, [f64; 2])>,
    face_cycles: Vec<(CellId, Vec<CellId>)>,
    faces_signed: Vec<(CellId, Vec<(CellId, i8)>)>,
    closed: bool,
}

impl DiagramBuilder {
    fn new(closed: bool) -> Self {
        Self {
            vertices: Vec::new(),
            edges: Vec::new(),
            open_edges: Vec::new(),
            face_cycles: Vec::new(),
            faces_signed: Vec::new(),
            closed,
        }
    }

    fn vertex(&mut self, id: &str, x: f64, y: f64) -> &mut Self {
        self.vertices.push((id.into(), [x, y]));
        self
    }

    /// Closed edge oriented tail -> head.
    fn edge(&mut self, id: &str, tail: &str, head: &str) -> &mut Self {
        self.edges.push((id.into(), tail.into(), head.into()));
        self
    }

    /// Open-ended edge anchored at `vertex`, extending along `dir`.
    fn open_edge(&mut self, id: &str, vertex: &str, dir: [f64; 2]) -> &mut Self {
        self.open_edges.push((id.into(), vertex.into(), dir));
        self
    }

    /// Face given as its boundary vertex cycle in traversal order.
    fn face(&mut self, id: &str, cycle: &[&str]) -> &mut Self {
        self.face_cycles
            .push((id.into(), cycle.iter().map(|s| s.to_string()).collect()));
        self
    }

    /// Face given as an explicit signed edge list (used when the boundary
    /// contains open-ended edges).
    fn face_edges(&mut self, id: &str, edges: &[(&str, i8)]) -> &mut Self {
        self.faces_signed.push((
            id.into(),
            edges.iter().map(|(e, s)| (e.to_string(), *s)).collect(),
        ));
        self
    }

    fn build(&self) -> Diagram {
        let mut cells: Vec<(CellId, usize)> = Vec::new();
        let mut incidence: Vec<(CellId, CellId, i8)> = Vec::new();
        for (id, _) in &self.vertices {
            cells.push((id.clone(), 0));
        }
        // Lookup for undirected vertex pair -> (edge id, tail, head).
        let mut by_pair: HashMap<(CellId, CellId), (CellId, CellId)> = HashMap::new();
        for (id, tail, head) in &self.edges {
            cells.push((id.clone(), 1));
            incidence.push((tail.clone(), id.clone(), -1));
            incidence.push((head.clone(), id.clone(), 1));
            let key = if tail < head {
                (tail.clone(), head.clone())
            } else {
                (head.clone(), tail.clone())
            };
            let prev = by_pair.insert(key, (id.clone(), tail.clone()));
            assert!(prev.is_none(), "parallel edges need explicit face edge lists");
        }
        for (id, v, _) in &self.open_edges {
            cells.push((id.clone(), 1));
            incidence.push((v.clone(), id.clone(), -1));
        }
        for (id, cycle) in &self.face_cycles {
            cells.push((id.clone(), 2));
            for k in 0..cycle.len() {
                let a = &cycle[k];
                let b = &cycle[(k + 1) % cycle.len()];
                let key = if a < b {
                    (a.clone(), b.clone())
                } else {
                    (b.clone(), a.clone())
                };
                let (edge, tail) = by_pair
                    .get(&key)
                    .unwrap_or_else(|| panic!("no edge between {a} and {b}"))
                    .clone();
                let sign = if &tail == a { 1 } else { -1 };
                incidence.push((edge, id.clone(), sign));
            }
        }
        for (id, edges) in &self.faces_signed {
            cells.push((id.clone(), 2));
            for (edge, sign) in edges {
                incidence.push((edge.clone(), id.clone(), *sign));
            }
        }
        let complex =
            Arc::new(CellComplex::new(cells, incidence, self.closed).expect("fixture complex"));
        let realization = self.vertices.iter().cloned().collect();
        let open_dirs = self
            .open_edges
            .iter()
            .map(|(id, _, d)| (id.clone(), *d))
            .collect();
        Diagram::new(complex, realization, open_dirs).expect("fixture diagram")
    }
}

/// Square with four diagonal braces to a center node; a sphere with five
/// faces. One self-stress: unit tension on the outer ring, compression
/// -sqrt(2) on the braces.
pub fn braced_square() -> Diagram {
    let mut b = DiagramBuilder::new(true);
    b.vertex("a", 1.0, 1.0)
        .vertex("b", -1.0, 1.0)
        .vertex("c", -1.0, -1.0)
        .vertex("d", 1.0, -1.0)
        .vertex("o", 0.0, 0.0);
    // Outer ring first, then braces: stress vectors are reported in this order.
    b.edge("e_ab", "a", "b")
        .edge("e_bc", "b", "c")
        .edge("e_cd", "c", "d")
        .edge("e_da", "d", "a")
        .edge("e_oa", "o", "a")
        .edge("e_ob", "o", "b")
        .edge("e_oc", "o", "c")
        .edge("e_od", "o", "d");
    b.face("f_ab", &["o", "a", "b"])
        .face("f_bc", &["o", "b", "c"])
        .face("f_cd", &["o", "c", "d"])
        .face("f_da", &["o", "d", "a"])
        .face("f_out", &["a", "d", "c", "b"]);
    b.build()
}

/// Unit square ring; a sphere with two faces. Rigid in aspect only: the
/// position sheaf sees two translations and two aspect-ratio deformations.
pub fn unit_square() -> Diagram {
    let mut b = DiagramBuilder::new(true);
    b.vertex("a", 0.0, 0.0)
        .vertex("b", 1.0, 0.0)
        .vertex("c", 1.0, 1.0)
        .vertex("d", 0.0, 1.0);
    b.edge("e_ab", "a", "b")
        .edge("e_bc", "b", "c")
        .edge("e_cd", "c", "d")
        .edge("e_da", "d", "a");
    b.face("f_in", &["a", "b", "c", "d"])
        .face("f_out", &["a", "d", "c", "b"]);
    b.build()
}

/// Triangle in generic position; a sphere with two faces.
pub fn triangle() -> Diagram {
    let mut b = DiagramBuilder::new(true);
    b.vertex("a", 0.0, 0.0)
        .vertex("b", 2.0, 0.0)
        .vertex("c", 0.7, 1.3);
    b.edge("e_ab", "a", "b")
        .edge("e_bc", "b", "c")
        .edge("e_ca", "c", "a");
    b.face("f_in", &["a", "b", "c"]).face("f_out", &["a", "c", "b"]);
    b.build()
}

/// Four-bar linkage: a square of bars with no faces. One mechanism.
pub fn four_bar() -> Diagram {
    let mut b = DiagramBuilder::new(false);
    b.vertex("a", 0.0, 0.0)
        .vertex("b", 1.0, 0.0)
        .vertex("c", 1.0, 1.0)
        .vertex("d", 0.0, 1.0);
    b.edge("e_ab", "a", "b")
        .edge("e_bc", "b", "c")
        .edge("e_cd", "c", "d")
        .edge("e_da", "d", "a");
    b.build()
}

/// A single bar.
pub fn single_edge() -> Diagram {
    let mut b = DiagramBuilder::new(false);
    b.vertex("u", 0.0, 0.0).vertex("v", 1.0, 0.0);
    b.edge("e", "u", "v");
    b.build()
}

/// Rectangular frame with two interior nodes on the horizontal midline,
/// each strutted to the nearest corners and joined by a bridge bar. The
/// symmetric placement produces one self-stress (struts and bridge in
/// tension, frame in compression) and one mechanism.
pub fn strutted_frame() -> Diagram {
    let mut b = DiagramBuilder::new(true);
    b.vertex("a", 0.0, 0.0)
        .vertex("b", 4.0, 0.0)
        .vertex("c", 4.0, 3.0)
        .vertex("d", 0.0, 3.0)
        .vertex("m1", 1.2, 1.5)
        .vertex("m2", 2.8, 1.5);
    b.edge("e_ab", "a", "b")
        .edge("e_bc", "b", "c")
        .edge("e_cd", "c", "d")
        .edge("e_da", "d", "a")
        .edge("s_a", "m1", "a")
        .edge("s_d", "m1", "d")
        .edge("s_b", "m2", "b")
        .edge("s_c", "m2", "c")
        .edge("bridge", "m1", "m2");
    b.face("f_bottom", &["a", "b", "m2", "m1"])
        .face("f_top", &["c", "d", "m1", "m2"])
        .face("f_left", &["a", "m1", "d"])
        .face("f_right", &["b", "c", "m2"])
        .face("f_out", &["a", "d", "c", "b"]);
    b.build()
}

/// Statically determinate triangle truss with boundary conditions: a pin at
/// `a` (two reaction lines), a roller at `b` (one reaction line) and one
/// load line at `c`. Open complex with unbounded sector faces.
pub fn open_truss() -> Diagram {
    let mut b = DiagramBuilder::new(false);
    b.vertex("a", 0.0, 0.0)
        .vertex("b", 4.0, 0.0)
        .vertex("c", 2.0, 1.5);
    b.edge("e_ab", "a", "b")
        .edge("e_bc", "b", "c")
        .edge("e_ca", "c", "a");
    b.open_edge("r_ax", "a", [-1.0, 0.0])
        .open_edge("r_ay", "a", [0.0, -1.0])
        .open_edge("r_by", "b", [0.0, -1.0])
        .open_edge("load", "c", [0.0, 1.0]);
    b.face("f_in", &["a", "b", "c"]);
    // Unbounded sectors between the open edges; traversal keeps the sector on
    // the left, entering along one ray and leaving along the next.
    b.face_edges("f_bottom", &[("r_by", -1), ("e_ab", -1), ("r_ay", 1)]);
    b.face_edges("f_wedge", &[("r_ay", -1), ("r_ax", 1)]);
    b.face_edges("f_left", &[("r_ax", -1), ("e_ca", -1), ("load", 1)]);
    b.face_edges("f_right", &[("load", -1), ("e_bc", -1), ("r_by", 1)]);
    b.build()
}

fn torus_vertex_name(i: usize, j: usize) -> String {
    format!("v{i}{j}")
}

/// A toroidal grid with optional diagonal braces and per-vertex coordinates.
fn torus_grid_diagram(
    n: usize,
    coords: impl Fn(usize, usize) -> [f64; 2],
    diagonals: &[(usize, usize)],
) -> Diagram {
    let mut b = DiagramBuilder::new(true);
    for i in 0..n {
        for j in 0..n {
            let p = coords(i, j);
            b.vertex(&torus_vertex_name(i, j), p[0], p[1]);
        }
    }
    for i in 0..n {
        for j in 0..n {
            b.edge(
                &format!("h{i}{j}"),
                &torus_vertex_name(i, j),
                &torus_vertex_name((i + 1) % n, j),
            );
            b.edge(
                &format!("u{i}{j}"),
                &torus_vertex_name(i, j),
                &torus_vertex_name(i, (j + 1) % n),
            );
        }
    }
    let braced: std::collections::HashSet<(usize, usize)> = diagonals.iter().copied().collect();
    for i in 0..n {
        for j in 0..n {
            let v00 = torus_vertex_name(i, j);
            let v10 = torus_vertex_name((i + 1) % n, j);
            let v11 = torus_vertex_name((i + 1) % n, (j + 1) % n);
            let v01 = torus_vertex_name(i, (j + 1) % n);
            if braced.contains(&(i, j)) {
                b.edge(&format!("d{i}{j}"), &v00, &v11);
                b.face(&format!("f{i}{j}a"), &[&v00, &v10, &v11]);
                b.face(&format!("f{i}{j}b"), &[&v00, &v11, &v01]);
            } else {
                b.face(&format!("f{i}{j}"), &[&v00, &v10, &v11, &v01]);
            }
        }
    }
    b.build()
}

/// 3x3 toroidal grid, 9 vertices / 18 edges / 9 quadrilateral faces.
pub fn toroidal_grid() -> Diagram {
    torus_grid_diagram(3, |i, j| [i as f64, j as f64], &[])
}

/// Toroidal grid with six diagonal braces (9 vertices, 24 edges, 15 faces).
/// At the straight grid realization this carries nine self-stresses and a
/// four-dimensional space of lifts modulo global affine functions.
pub fn braced_torus() -> Diagram {
    torus_grid_diagram(
        3,
        |i, j| [i as f64, j as f64],
        &[(0, 0), (1, 1), (2, 2), (0, 1), (1, 2), (2, 0)],
    )
}

/// Toroidal grid with two diagonal braces in generic position: five
/// self-stresses, more than the 4g reciprocal bound but not above the 6g
/// lift bound. A reciprocal diagram exists while the lift space is trivial.
pub fn partially_braced_torus() -> Diagram {
    // Deterministic jitter keeps the realization away from the degenerate
    // straight-grid stratum so the count is exactly five.
    let jitter = [
        [0.00, 0.00],
        [0.13, -0.07],
        [-0.11, 0.05],
        [0.09, 0.12],
        [-0.06, -0.13],
        [0.07, 0.08],
        [-0.14, 0.06],
        [0.05, -0.09],
        [-0.08, 0.11],
    ];
    torus_grid_diagram(
        3,
        |i, j| {
            let [dx, dy] = jitter[3 * i + j];
            [i as f64 + dx, j as f64 + dy]
        },
        &[(0, 0), (1, 1)],
    )
}

/// Fully triangulated 3x3 toroidal grid (9 vertices, 27 edges, 18 triangles).
pub fn triangulated_torus() -> Diagram {
    torus_grid_diagram(
        3,
        |i, j| [i as f64, j as f64],
        &[
            (0, 0),
            (0, 1),
            (0, 2),
            (1, 0),
            (1, 1),
            (1, 2),
            (2, 0),
            (2, 1),
            (2, 2),
        ],
    )
}

/// Torus built on the complete bipartite graph K33 plus a triangle of
/// chords. The realization puts one b-node on the line through the a-nodes,
/// giving one mechanism and four self-stresses; one nontrivial dimension of
/// dual realizations survives.
pub fn k33_torus() -> Diagram {
    let mut b = DiagramBuilder::new(true);
    b.vertex("a1", 0.0, 0.0)
        .vertex("a2", 2.0, 0.0)
        .vertex("a3", 5.0, 0.0)
        .vertex("b2", 3.0, 0.0)
        .vertex("b1", 1.0, 2.0)
        .vertex("b3", 3.5, -1.8);
    for (ai, a) in ["a1", "a2", "a3"].iter().enumerate() {
        for (bi, v) in ["b1", "b2", "b3"].iter().enumerate() {
            b.edge(&format!("e{}{}", ai + 1, bi + 1), a, v);
        }
    }
    b.edge("x12", "a1", "a2")
        .edge("x23", "a2", "a3")
        .edge("x31", "a3", "a1");
    // Hexagonal faces of the standard oriented embedding, each split by one
    // chord into a triangle and a pentagon.
    b.face("t1", &["a1", "b1", "a2"])
        .face("p1", &["a1", "a2", "b2", "a3", "b3"])
        .face("t2", &["a2", "b3", "a3"])
        .face("p2", &["a1", "b2", "a2", "a3", "b1"])
        .face("t3", &["a3", "b2", "a1"])
        .face("p3", &["a1", "b3", "a2", "b1", "a3"]);
    b.build()
}

/// Triangulated sphere: octahedron projected as a triangular antiprism.
pub fn octahedron() -> Diagram {
    let mut b = DiagramBuilder::new(true);
    let outer = 2.0;
    let inner = 0.8;
    let deg = |d: f64| d.to_radians();
    b.vertex("pa", outer * deg(90.0).cos(), outer * deg(90.0).sin())
        .vertex("pb", outer * deg(210.0).cos(), outer * deg(210.0).sin())
        .vertex("pc", outer * deg(330.0).cos(), outer * deg(330.0).sin())
        .vertex("qa", inner * deg(150.0).cos(), inner * deg(150.0).sin())
        .vertex("qb", inner * deg(270.0).cos(), inner * deg(270.0).sin())
        .vertex("qc", inner * deg(30.0).cos(), inner * deg(30.0).sin());
    b.edge("e_ab", "pa", "pb")
        .edge("e_bc", "pb", "pc")
        .edge("e_ca", "pc", "pa")
        .edge("i_ab", "qa", "qb")
        .edge("i_bc", "qb", "qc")
        .edge("i_ca", "qc", "qa")
        .edge("s_aa", "pa", "qa")
        .edge("s_ba", "pb", "qa")
        .edge("s_bb", "pb", "qb")
        .edge("s_cb", "pc", "qb")
        .edge("s_cc", "pc", "qc")
        .edge("s_ac", "pa", "qc");
    b.face("f1", &["pa", "pb", "qa"])
        .face("f2", &["pb", "qb", "qa"])
        .face("f3", &["pb", "pc", "qb"])
        .face("f4", &["pc", "qc", "qb"])
        .face("f5", &["pc", "pa", "qc"])
        .face("f6", &["pa", "qa", "qc"])
        .face("f_in", &["qa", "qb", "qc"])
        .face("f_out", &["pa", "pc", "pb"]);
    b.build()
}

/// Genus-two surface: two toroidal grids with one face removed from each,
/// glued along the resulting square boundary.
pub fn genus_two() -> Diagram {
    let n = 3;
    let mut b = DiagramBuilder::new(true);
    // Torus A occupies the unit grid; torus B is offset and slightly skewed
    // so that all coordinates stay distinct and faces non-degenerate.
    for i in 0..n {
        for j in 0..n {
            b.vertex(&format!("A{i}{j}"), i as f64, j as f64);
        }
    }
    let b_name = |i: usize, j: usize| -> String {
        // The glued square identifies B's (0,0),(1,0),(1,1),(0,1) with A's.
        let shared = [(0, 0), (1, 0), (1, 1), (0, 1)];
        if shared.contains(&(i, j)) {
            format!("A{i}{j}")
        } else {
            format!("B{i}{j}")
        }
    };
    for i in 0..n {
        for j in 0..n {
            if b_name(i, j).starts_with('B') {
                b.vertex(
                    &b_name(i, j),
                    4.0 + i as f64 + 0.17 * j as f64,
                    -0.5 + j as f64 + 0.11 * i as f64,
                );
            }
        }
    }
    let a_name = |i: usize, j: usize| format!("A{}{}", i % n, j % n);
    // Torus A edges.
    for i in 0..n {
        for j in 0..n {
            b.edge(&format!("Ah{i}{j}"), &a_name(i, j), &a_name(i + 1, j));
            b.edge(&format!("Au{i}{j}"), &a_name(i, j), &a_name(i, j + 1));
        }
    }
    // Torus B edges, skipping the four identified with A's seam.
    let b_edge_name = |kind: char, i: usize, j: usize| -> String {
        match (kind, i, j) {
            ('h', 0, 0) => "Ah00".into(),
            ('h', 0, 1) => "Ah01".into(),
            ('u', 0, 0) => "Au00".into(),
            ('u', 1, 0) => "Au10".into(),
            _ => format!("B{kind}{i}{j}"),
        }
    };
    for i in 0..n {
        for j in 0..n {
            let h = b_edge_name('h', i, j);
            if h.starts_with('B') {
                b.edge(&h, &b_name(i, j), &b_name((i + 1) % n, j));
            }
            let u = b_edge_name('u', i, j);
            if u.starts_with('B') {
                b.edge(&u, &b_name(i, j), &b_name(i, (j + 1) % n));
            }
        }
    }
    // Faces: all of A's except (0,0); all of B's except (0,0), reversed.
    for i in 0..n {
        for j in 0..n {
            if (i, j) == (0, 0) {
                continue;
            }
            b.face(
                &format!("Af{i}{j}"),
                &[
                    &a_name(i, j),
                    &a_name(i + 1, j),
                    &a_name(i + 1, j + 1),
                    &a_name(i, j + 1),
                ],
            );
        }
    }
    for i in 0..n {
        for j in 0..n {
            if (i, j) == (0, 0) {
                continue;
            }
            // Reversed traversal keeps the glued surface coherently oriented.
            b.face(
                &format!("Bf{i}{j}"),
                &[
                    &b_name(i, j),
                    &b_name(i, (j + 1) % n),
                    &b_name((i + 1) % n, (j + 1) % n),
                    &b_name((i + 1) % n, j),
                ],
            );
        }
    }
    b.build()
}

/// Every shipped fixture with its registry name.
pub fn named_fixtures() -> Vec<(&'static str, Diagram)> {
    vec![
        ("braced_square", braced_square()),
        ("unit_square", unit_square()),
        ("triangle", triangle()),
        ("four_bar", four_bar()),
        ("single_edge", single_edge()),
        ("strutted_frame", strutted_frame()),
        ("open_truss", open_truss()),
        ("toroidal_grid", toroidal_grid()),
        ("braced_torus", braced_torus()),
        ("partially_braced_torus", partially_braced_torus()),
        ("triangulated_torus", triangulated_torus()),
        ("k33_torus", k33_torus()),
        ("octahedron", octahedron()),
        ("genus_two", genus_two()),
    ]
}

/// All closed oriented surface fixtures.
pub fn closed_suite() -> Vec<Diagram> {
    named_fixtures()
        .into_iter()
        .filter(|(_, d)| d.complex.is_closed())
        .map(|(_, d)| d)
        .collect()
}
