use dualcell_core::lattice::{belts_of, dv_cell, relevant_vectors, venkov_check, Lattice};
use dualcell_core::rat::qvec;
use dualcell_core::ratpoly::{FaceLattice, Polytope};
use dualcell_core::tiling::{
    classify_dual3, lattice_points_are_vertices, parity_distinct, Dual3Type, FanType, TilingComplex,
};

fn lat(rows: &[&[i64]]) -> Lattice {
    Lattice::from_int_gram(rows).unwrap()
}

fn fcc() -> Lattice {
    lat(&[&[2, 0, 1], &[0, 2, 1], &[1, 1, 2]])
}

fn bcc() -> Lattice {
    lat(&[&[3, -1, -1], &[-1, 3, -1], &[-1, -1, 3]])
}

fn hex_prism() -> Lattice {
    lat(&[&[2, 1, 0], &[1, 2, 0], &[0, 0, 1]])
}

#[test]
fn fcc_cell_is_rhombic_dodecahedron() {
    let p = dv_cell(&fcc());
    assert_eq!(relevant_vectors(&fcc()).vectors.len(), 12);
    let fl = FaceLattice::of(&p);
    assert_eq!([fl.count(0), fl.count(1), fl.count(2)], [14, 24, 12]);
    let mut lens: Vec<usize> = belts_of(&p).unwrap().iter().map(|b| b.len()).collect();
    lens.sort();
    assert_eq!(lens, vec![6, 6, 6, 6]);
}

#[test]
fn bcc_cell_is_truncated_octahedron() {
    let p = dv_cell(&bcc());
    assert_eq!(p.facets.len(), 14);
    assert_eq!(p.vertices.len(), 24);
    assert!(venkov_check(&p).passes());
}

#[test]
fn hexagonal_prism_belts() {
    let p = dv_cell(&hex_prism());
    let mut lens: Vec<usize> = belts_of(&p).unwrap().iter().map(|b| b.len()).collect();
    lens.sort();
    assert_eq!(lens, vec![4, 4, 4, 6]);
}

#[test]
fn orbit_counts_and_euler() {
    let z2 = TilingComplex::build(&Lattice::cubic(2)).unwrap();
    assert_eq!(z2.orbit_counts(), vec![1, 2, 1]);
    let a2 = TilingComplex::build(&lat(&[&[2, 1], &[1, 2]])).unwrap();
    assert_eq!(a2.orbit_counts(), vec![2, 3, 1]);
    for l in [fcc(), bcc(), hex_prism(), Lattice::cubic(3)] {
        let c = TilingComplex::build(&l).unwrap();
        assert_eq!(c.euler_characteristic(), 0);
        assert_eq!(c.orbit_counts()[3], 1);
    }
    // rhombic dodecahedron: 14 vertices in 3 classes, 24 hexagonal edges / 3, 12 facets / 2
    let f = TilingComplex::build(&fcc()).unwrap();
    assert_eq!(f.orbit_counts(), vec![3, 8, 6, 1]);
}

#[test]
fn facets_have_two_tiles() {
    for l in [fcc(), bcc(), hex_prism()] {
        let c = TilingComplex::build(&l).unwrap();
        for o in c.orbits_of_dim(2) {
            assert_eq!(c.tiles(&c.rep(o)).len(), 2);
        }
    }
}

#[test]
fn fcc_vertex_dual_cells() {
    let c = TilingComplex::build(&fcc()).unwrap();
    let mut kinds: Vec<Dual3Type> = c.orbits_of_dim(0).iter().map(|&o| classify_dual3(&c.dual_cell(&c.rep(o))).unwrap()).collect();
    kinds.sort();
    kinds.dedup();
    assert_eq!(kinds, vec![Dual3Type::Octahedron, Dual3Type::Simplex]);
    assert!(c.is_3_irreducible().unwrap().irreducible);
}

#[test]
fn bcc_is_primitive() {
    let c = TilingComplex::build(&bcc()).unwrap();
    let irr = c.is_3_irreducible().unwrap();
    assert!(irr.irreducible);
    assert!(irr.types.iter().all(|(_, t)| *t == Dual3Type::Simplex));
}

#[test]
fn hexagonal_prism_fans() {
    let c = TilingComplex::build(&hex_prism()).unwrap();
    let mut fans: Vec<FanType> = c.orbits_of_dim(1).iter().map(|&o| c.classify_d2(&c.rep(o)).unwrap()).collect();
    fans.sort();
    fans.dedup();
    assert_eq!(fans, vec![FanType::ATriangle, FanType::BParallelogram]);
    // vertical edges are hexagonal, horizontal ones quadruple
    for o in c.orbits_of_dim(1) {
        let pts = c.face_points(&c.rep(o));
        let vertical = pts[0][0] == pts[1][0] && pts[0][1] == pts[1][1];
        let want = if vertical { FanType::ATriangle } else { FanType::BParallelogram };
        assert_eq!(c.classify_d2(&c.rep(o)).unwrap(), want);
    }
    let irr = c.is_3_irreducible().unwrap();
    assert!(!irr.irreducible);
    assert!(irr.types.iter().all(|(_, t)| *t == Dual3Type::TriangularPrism));
}

#[test]
fn duality_and_parity() {
    for l in [Lattice::cubic(3), fcc(), bcc(), hex_prism()] {
        let c = TilingComplex::build(&l).unwrap();
        let d = c.dim() as i32;
        for o in 0..c.orbits.len() {
            let f = c.rep(o);
            let dc = c.dual_cell(&f);
            assert!(parity_distinct(&dc.verts));
            assert!(lattice_points_are_vertices(&dc));
            assert_eq!(dc.polytope.vertices.len(), dc.verts.len(), "convex position");
            assert_eq!(dc.dim, dc.combdim);
            for g in c.star(&f).faces {
                assert!(c.face_dim(&g) > c.face_dim(&f) && c.face_dim(&g) < d);
                let sub = c.tiles(&g);
                assert!(sub.iter().all(|t| dc.verts.contains(t)));
            }
        }
        // converse: if Vert(D(G)) ⊂ Vert(D(F)) for G near F then F ⊂ G
        for o in 0..c.orbits.len() {
            let f = c.rep(o);
            let tf = c.tiles(&f);
            let star = c.star(&f).faces;
            let pts_f = c.face_points(&f);
            for g in &star {
                let pts_g = c.face_points(g);
                assert!(pts_f.iter().all(|p| pts_g.contains(p)));
            }
            for o2 in 0..c.orbits.len() {
                if c.orbits[o2].dim >= d {
                    continue;
                }
                for (_, delta) in &c.orbits[o2].members {
                    for t in &tf {
                        let shift: Vec<i64> = t.iter().zip(delta).map(|(a, b)| a + b).collect();
                        let g = dualcell_core::tiling::FaceRef { orbit: o2, shift };
                        let tg = c.tiles(&g);
                        let contained = tg.iter().all(|x| tf.contains(x));
                        let is_over = g == f || star.contains(&g);
                        assert_eq!(contained, is_over, "duality for {f:?} vs {g:?}");
                    }
                }
            }
        }
    }
}

#[test]
fn skinny_dual_cells() {
    for l in [Lattice::cubic(3), fcc(), lat(&[&[2, 1], &[1, 2]])] {
        let c = TilingComplex::build(&l).unwrap();
        let r = c.skinny_audit();
        assert!(r.ok(), "{:?}", r.failures);
    }
}

#[test]
fn translate_intersections() {
    let z2 = TilingComplex::build(&Lattice::cubic(2)).unwrap();
    let edge = z2.orbits_of_dim(1)[0];
    let dc = z2.dual_cell(&z2.rep(edge));
    let e: Vec<i64> = dc.verts[1].iter().zip(&dc.verts[0]).map(|(a, b)| a - b).collect();
    let ti = z2.translate_intersection(&dc, &e).unwrap().unwrap();
    assert_eq!(ti.cell.vertices.len(), 1);
    assert!(ti.face.is_some());
    let far: Vec<i64> = e.iter().map(|x| 3 * x).collect();
    assert!(z2.translate_intersection(&dc, &far).unwrap().is_none());

    let c = TilingComplex::build(&fcc()).unwrap();
    for o in c.orbits_of_dim(0) {
        let dc = c.dual_cell(&c.rep(o));
        if classify_dual3(&dc).unwrap() != Dual3Type::Octahedron {
            continue;
        }
        let fl = FaceLattice::of(&dc.polytope);
        for e in fl.of_dim(1) {
            let vs = &fl.faces[e].vertices;
            let t: Vec<i64> = dc.verts[vs[1]].iter().zip(&dc.verts[vs[0]]).map(|(a, b)| a - b).collect();
            let ti = c.translate_intersection(&dc, &t).unwrap().unwrap();
            // |x|_1 + |x - t|_1 >= |t|_1 = 2 forces the intersection onto the parallel edge
            assert_eq!(ti.cell.dim, 1);
            assert!(ti.face.is_some());
            let h = &ti.hyperplane;
            for v in &ti.cell.vertices {
                assert_eq!(dualcell_core::rat::dot(&h.normal, v), h.offset);
            }
        }
    }
}

#[test]
fn explicit_prototile_accepted() {
    // the unit square, offset from the origin, tiles Z^2
    let sq = Polytope::from_vertices(&[qvec(&[0, 0]), qvec(&[1, 0]), qvec(&[0, 1]), qvec(&[1, 1])]).unwrap();
    let c = TilingComplex::from_prototile(&Lattice::cubic(2), &sq).unwrap();
    assert_eq!(c.orbit_counts(), vec![1, 2, 1]);
    // a sheared parallelogram with lattice facet vectors also tiles
    let sh = Polytope::from_vertices(&[qvec(&[0, 0]), qvec(&[1, 0]), qvec(&[1, 1]), qvec(&[2, 1])]).unwrap();
    assert!(TilingComplex::from_prototile(&Lattice::cubic(2), &sh).is_ok());
    let big = Polytope::from_vertices(&[qvec(&[0, 0]), qvec(&[2, 0]), qvec(&[0, 1]), qvec(&[2, 1])]).unwrap();
    assert!(TilingComplex::from_prototile(&Lattice::cubic(2), &big).is_err());
}
