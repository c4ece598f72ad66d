//! Plane graphs as rotation systems of darts (directed half-edges).
//!
//! Edge `e` owns darts `2e` and `2e+1`; `twin(d) = d ^ 1`. Every vertex
//! carries the cyclic clockwise order of its outgoing darts. Faces are
//! dart orbits of `d -> rot_next(twin(d))`; the outer face is designated
//! by a dart on its walk. Vertex and edge ids are dense and never reused
//! within one graph lifetime: deletions mark slots dead.

use std::collections::{BTreeSet, HashMap};

use crate::abstract_graph::AbstractGraph;
use crate::error::{Error, Result};

pub type VertexId = usize;
pub type EdgeId = usize;
pub type DartId = usize;
pub type FaceId = usize;

const DEAD: usize = usize::MAX;

#[derive(Debug, Clone)]
pub struct PlaneGraph {
    origin: Vec<usize>, // per dart; DEAD when deleted
    rot_next: Vec<DartId>,
    rot_prev: Vec<DartId>,
    vertex_alive: Vec<bool>,
    anchor: Vec<Option<DartId>>, // one outgoing dart per vertex
    dart_count: Vec<usize>,      // outgoing darts per vertex (= degree w/ loops counted twice... loops contribute 2 darts at the vertex)
    edge_alive: Vec<bool>,
    outer_dart: Option<DartId>,
}

/// One face of a plane graph, as discovered by `FaceSet::compute`.
#[derive(Debug, Clone)]
pub struct Face {
    pub id: FaceId,
    /// boundary walk in traversal order (empty only for the synthetic face
    /// of an edgeless graph)
    pub walk: Vec<DartId>,
    /// distinct vertices on the boundary, sorted
    pub vertices: Vec<VertexId>,
    pub bounded: bool,
}

impl Face {
    /// Face length: number of distinct
    /// boundary vertices.
    pub fn length(&self) -> usize {
        self.vertices.len()
    }
}

/// A snapshot of all faces plus the dart-to-face index.
#[derive(Debug, Clone)]
pub struct FaceSet {
    pub faces: Vec<Face>,
    pub face_of_dart: Vec<usize>,
    pub outer: FaceId,
}

impl FaceSet {
    pub fn bounded(&self) -> impl Iterator<Item = &Face> {
        self.faces.iter().filter(|f| f.bounded)
    }

    pub fn max_bounded_length(&self) -> usize {
        self.bounded().map(|f| f.length()).max().unwrap_or(0)
    }
}

impl PlaneGraph {
    pub fn new_empty() -> Self {
        PlaneGraph {
            origin: Vec::new(),
            rot_next: Vec::new(),
            rot_prev: Vec::new(),
            vertex_alive: Vec::new(),
            anchor: Vec::new(),
            dart_count: Vec::new(),
            edge_alive: Vec::new(),
            outer_dart: None,
        }
    }

    #[inline]
    pub fn twin(&self, d: DartId) -> DartId {
        d ^ 1
    }

    #[inline]
    pub fn edge_of(&self, d: DartId) -> EdgeId {
        d / 2
    }

    #[inline]
    pub fn darts_of(&self, e: EdgeId) -> (DartId, DartId) {
        (2 * e, 2 * e + 1)
    }

    #[inline]
    pub fn dart_origin(&self, d: DartId) -> VertexId {
        debug_assert!(self.origin[d] != DEAD);
        self.origin[d]
    }

    #[inline]
    pub fn dart_head(&self, d: DartId) -> VertexId {
        self.dart_origin(self.twin(d))
    }

    #[inline]
    pub fn dart_alive(&self, d: DartId) -> bool {
        d < self.origin.len() && self.origin[d] != DEAD
    }

    #[inline]
    pub fn rot_next(&self, d: DartId) -> DartId {
        self.rot_next[d]
    }

    #[inline]
    pub fn rot_prev(&self, d: DartId) -> DartId {
        self.rot_prev[d]
    }

    /// Next dart on the same face walk: rotation successor of the twin.
    #[inline]
    pub fn face_next(&self, d: DartId) -> DartId {
        self.rot_next[self.twin(d)]
    }

    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        (self.dart_origin(2 * e), self.dart_origin(2 * e + 1))
    }

    pub fn edge_alive(&self, e: EdgeId) -> bool {
        e < self.edge_alive.len() && self.edge_alive[e]
    }

    pub fn is_loop(&self, e: EdgeId) -> bool {
        let (u, v) = self.endpoints(e);
        u == v
    }

    pub fn has_loop(&self) -> bool {
        self.edge_ids().any(|e| self.is_loop(e))
    }

    pub fn vertex_alive(&self, v: VertexId) -> bool {
        v < self.vertex_alive.len() && self.vertex_alive[v]
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertex_alive.len()).filter(move |&v| self.vertex_alive[v])
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_alive.iter().filter(|&&a| a).count()
    }

    pub fn vertex_id_bound(&self) -> usize {
        self.vertex_alive.len()
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edge_alive.len()).filter(move |&e| self.edge_alive[e])
    }

    pub fn edge_count(&self) -> usize {
        self.edge_alive.iter().filter(|&&a| a).count()
    }

    pub fn darts(&self) -> impl Iterator<Item = DartId> + '_ {
        (0..self.origin.len()).filter(move |&d| self.origin[d] != DEAD)
    }

    /// Outgoing darts of `v` in clockwise rotation order, starting at the
    /// anchor dart.
    pub fn darts_at(&self, v: VertexId) -> Vec<DartId> {
        let mut out = Vec::with_capacity(self.dart_count[v]);
        if let Some(start) = self.anchor[v] {
            let mut d = start;
            loop {
                out.push(d);
                d = self.rot_next[d];
                if d == start {
                    break;
                }
            }
        }
        out
    }

    /// Degree of `v` (dart count; a loop contributes two).
    pub fn degree(&self, v: VertexId) -> usize {
        self.dart_count[v]
    }

    /// Neighbors in rotation order, with multiplicity.
    pub fn neighbors(&self, v: VertexId) -> Vec<VertexId> {
        self.darts_at(v).into_iter().map(|d| self.dart_head(d)).collect()
    }

    pub fn neighbor_set(&self, v: VertexId) -> BTreeSet<VertexId> {
        self.neighbors(v).into_iter().collect()
    }

    pub fn outer_dart(&self) -> Option<DartId> {
        self.outer_dart
    }

    pub fn set_outer_dart(&mut self, d: DartId) -> Result<()> {
        if !self.dart_alive(d) {
            return Err(Error::InconsistentRotation(format!("dart {d} is not alive")));
        }
        self.outer_dart = Some(d);
        Ok(())
    }

    pub fn add_vertex(&mut self) -> VertexId {
        self.vertex_alive.push(true);
        self.anchor.push(None);
        self.dart_count.push(0);
        self.vertex_alive.len() - 1
    }

    // ----- low-level rotation surgery -----

    fn alloc_edge_darts(&mut self, u: VertexId, v: VertexId) -> (DartId, DartId) {
        let e = self.edge_alive.len();
        self.edge_alive.push(true);
        let du = 2 * e;
        let dv = 2 * e + 1;
        self.origin.push(u);
        self.origin.push(v);
        self.rot_next.push(DEAD);
        self.rot_next.push(DEAD);
        self.rot_prev.push(DEAD);
        self.rot_prev.push(DEAD);
        (du, dv)
    }

    /// Insert `d_new` (already assigned an origin) into its origin's
    /// rotation immediately before `d_ref` in clockwise order.
    fn insert_dart_before(&mut self, d_ref: DartId, d_new: DartId) {
        let v = self.origin[d_new];
        debug_assert_eq!(self.origin[d_ref], v);
        let prev = self.rot_prev[d_ref];
        self.rot_next[prev] = d_new;
        self.rot_prev[d_new] = prev;
        self.rot_next[d_new] = d_ref;
        self.rot_prev[d_ref] = d_new;
        self.dart_count[v] += 1;
    }

    /// Make `d` the sole dart of its origin's rotation.
    fn install_single_dart(&mut self, d: DartId) {
        let v = self.origin[d];
        debug_assert!(self.anchor[v].is_none());
        self.rot_next[d] = d;
        self.rot_prev[d] = d;
        self.anchor[v] = Some(d);
        self.dart_count[v] = 1;
    }

    /// Remove `d` from its origin's rotation and mark it dead.
    fn unlink_dart(&mut self, d: DartId) {
        let v = self.origin[d];
        debug_assert!(v != DEAD);
        let next = self.rot_next[d];
        if next == d {
            self.anchor[v] = None;
        } else {
            let prev = self.rot_prev[d];
            self.rot_next[prev] = next;
            self.rot_prev[next] = prev;
            if self.anchor[v] == Some(d) {
                self.anchor[v] = Some(next);
            }
        }
        self.dart_count[v] -= 1;
        self.origin[d] = DEAD;
        self.rot_next[d] = DEAD;
        self.rot_prev[d] = DEAD;
    }

    /// Boundary walk of the face containing dart `d`.
    pub fn face_walk(&self, d: DartId) -> Vec<DartId> {
        let mut walk = Vec::new();
        let mut cur = d;
        loop {
            walk.push(cur);
            cur = self.face_next(cur);
            if cur == d {
                break;
            }
        }
        walk
    }

    /// Full boundary walk of the designated outer face (empty for an
    /// edgeless graph).
    pub fn outer_walk(&self) -> Vec<DartId> {
        match self.outer_dart {
            Some(d) => self.face_walk(d),
            None => Vec::new(),
        }
    }

    // ----- faces -----

    /// Face orbits with every face marked bounded, without consulting the
    /// outer designation.
    fn face_orbits(&self) -> (Vec<Face>, Vec<usize>) {
        let mut face_of_dart = vec![DEAD; self.origin.len()];
        let mut faces: Vec<Face> = Vec::new();
        for d in 0..self.origin.len() {
            if self.origin[d] == DEAD || face_of_dart[d] != DEAD {
                continue;
            }
            let id = faces.len();
            let walk = self.face_walk(d);
            let mut vs: Vec<usize> = walk.iter().map(|&x| self.origin[x]).collect();
            vs.sort_unstable();
            vs.dedup();
            for &x in &walk {
                face_of_dart[x] = id;
            }
            faces.push(Face {
                id,
                walk,
                vertices: vs,
                bounded: true,
            });
        }
        (faces, face_of_dart)
    }

    /// Enumerate all faces. For an edgeless graph a single synthetic
    /// unbounded face holds every alive vertex on its boundary.
    pub fn faces(&self) -> FaceSet {
        let (mut faces, face_of_dart) = self.face_orbits();
        let outer = if faces.is_empty() {
            faces.push(Face {
                id: 0,
                walk: Vec::new(),
                vertices: self.vertices().collect(),
                bounded: false,
            });
            0
        } else {
            let od = self
                .outer_dart
                .expect("graph with edges must designate an outer face");
            let id = face_of_dart[od];
            faces[id].bounded = false;
            id
        };
        FaceSet {
            faces,
            face_of_dart,
            outer,
        }
    }

    /// Designate the outer face by the default rule: maximum length
    /// (distinct boundary vertices), ties broken by lowest face id.
    pub fn designate_outer_default(&mut self) {
        let (faces, _) = self.face_orbits();
        let best = faces
            .iter()
            .filter(|f| !f.walk.is_empty())
            .max_by(|a, b| a.length().cmp(&b.length()).then(b.id.cmp(&a.id)));
        self.outer_dart = best.map(|f| f.walk[0]);
    }

    /// Designate the outer face by a boundary walk given as a cyclic
    /// vertex sequence; the walk must match some face's dart walk.
    pub fn set_outer_face_by_walk(&mut self, walk: &[VertexId]) -> Result<()> {
        let fs = self.faces();
        for f in &fs.faces {
            if f.walk.len() != walk.len() || f.walk.is_empty() {
                continue;
            }
            let seq: Vec<usize> = f.walk.iter().map(|&d| self.origin[d]).collect();
            let n = seq.len();
            'rot: for s in 0..n {
                for i in 0..n {
                    if seq[(s + i) % n] != walk[i] {
                        continue 'rot;
                    }
                }
                self.outer_dart = Some(f.walk[s]);
                return Ok(());
            }
        }
        Err(Error::InconsistentRotation(
            "outer walk does not match any face".into(),
        ))
    }

    // ----- construction from neighbor rotations -----

    /// Build a plane graph from per-vertex clockwise neighbor lists.
    /// Repeated entries are parallel edges paired by rank of occurrence;
    /// a loop appears twice in its vertex's list. The embedding of each
    /// component must satisfy Euler's formula, otherwise
    /// `NonPlanarEmbedding` is returned.
    pub fn build_embedding(neighbors: &[Vec<VertexId>]) -> Result<PlaneGraph> {
        let n = neighbors.len();
        let mut g = PlaneGraph::new_empty();
        for _ in 0..n {
            g.add_vertex();
        }
        for (u, list) in neighbors.iter().enumerate() {
            for &v in list {
                if v >= n {
                    return Err(Error::InconsistentRotation(format!(
                        "vertex {u} lists unknown neighbor {v}"
                    )));
                }
            }
        }
        // symmetry check
        let mut count: HashMap<(usize, usize), usize> = HashMap::new();
        for (u, list) in neighbors.iter().enumerate() {
            for &v in list {
                *count.entry((u, v)).or_insert(0) += 1;
            }
        }
        for (&(u, v), &c) in &count {
            if u == v {
                if c % 2 != 0 {
                    return Err(Error::InconsistentRotation(format!(
                        "vertex {u} has an odd number of loop entries"
                    )));
                }
            } else if count.get(&(v, u)).copied().unwrap_or(0) != c {
                return Err(Error::InconsistentRotation(format!(
                    "{u} lists {v} {c} times but not vice versa"
                )));
            }
        }
        // pair slots by rank of occurrence
        let mut slot_dart: Vec<Vec<Option<DartId>>> = neighbors
            .iter()
            .map(|l| vec![None; l.len()])
            .collect();
        // occurrence positions of each (u,v)
        let mut occ: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (u, list) in neighbors.iter().enumerate() {
            for (pos, &v) in list.iter().enumerate() {
                occ.entry((u, v)).or_default().push(pos);
            }
        }
        for (u, list) in neighbors.iter().enumerate() {
            for (pos, &v) in list.iter().enumerate() {
                if slot_dart[u][pos].is_some() {
                    continue;
                }
                if u == v {
                    // pair loop occurrences 0-1, 2-3, ...
                    let positions = &occ[&(u, u)];
                    let rank = positions.iter().position(|&p| p == pos).unwrap();
                    debug_assert!(rank % 2 == 0);
                    let pos2 = positions[rank + 1];
                    let (d1, d2) = g.alloc_edge_darts(u, u);
                    slot_dart[u][pos] = Some(d1);
                    slot_dart[u][pos2] = Some(d2);
                } else {
                    let rank = occ[&(u, v)].iter().position(|&p| p == pos).unwrap();
                    let pos2 = occ[&(v, u)][rank];
                    let (d1, d2) = g.alloc_edge_darts(u, v);
                    slot_dart[u][pos] = Some(d1);
                    slot_dart[v][pos2] = Some(d2);
                }
            }
        }
        // rotations in list order
        for (u, slots) in slot_dart.iter().enumerate() {
            if slots.is_empty() {
                continue;
            }
            let ds: Vec<DartId> = slots.iter().map(|s| s.unwrap()).collect();
            let m = ds.len();
            for i in 0..m {
                g.rot_next[ds[i]] = ds[(i + 1) % m];
                g.rot_prev[ds[i]] = ds[(m + i - 1) % m];
            }
            g.anchor[u] = Some(ds[0]);
            g.dart_count[u] = m;
        }
        g.check_euler()?;
        g.designate_outer_default();
        Ok(g)
    }

    /// Euler check per connected component (isolated vertices count one
    /// face each).
    pub fn check_euler(&self) -> Result<()> {
        let comps = self.vertex_components();
        let fs = {
            // face orbits without needing an outer designation
            let mut face_of = vec![DEAD; self.origin.len()];
            let mut reps: Vec<DartId> = Vec::new();
            for d in 0..self.origin.len() {
                if self.origin[d] == DEAD || face_of[d] != DEAD {
                    continue;
                }
                let id = reps.len();
                for x in self.face_walk(d) {
                    face_of[x] = id;
                }
                reps.push(d);
            }
            (face_of, reps)
        };
        for comp in comps {
            let vset: BTreeSet<usize> = comp.iter().copied().collect();
            let v = vset.len();
            let e = self
                .edge_ids()
                .filter(|&e| vset.contains(&self.endpoints(e).0))
                .count();
            let f = if e == 0 {
                1
            } else {
                let mut ids = BTreeSet::new();
                for d in self.darts() {
                    if vset.contains(&self.origin[d]) {
                        ids.insert(fs.0[d]);
                    }
                }
                ids.len()
            };
            if v + f != e + 2 {
                return Err(Error::NonPlanarEmbedding { v, e, f });
            }
        }
        Ok(())
    }

    pub fn vertex_components(&self) -> Vec<Vec<VertexId>> {
        let mut seen = vec![false; self.vertex_alive.len()];
        let mut comps = Vec::new();
        for s in self.vertices() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for w in self.neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_components().len() <= 1
    }

    pub fn require_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::DisconnectedInput)
        }
    }

    /// Validate structural invariants (used by tests and after mutations).
    pub fn validate(&self) -> Result<()> {
        for d in self.darts() {
            let t = self.twin(d);
            if !self.dart_alive(t) {
                return Err(Error::InconsistentRotation(format!("dart {d} has dead twin")));
            }
            if self.rot_next[self.rot_prev[d]] != d || self.rot_prev[self.rot_next[d]] != d {
                return Err(Error::InconsistentRotation(format!("rotation broken at {d}")));
            }
        }
        for v in self.vertices() {
            let ds = self.darts_at(v);
            if ds.len() != self.dart_count[v] {
                return Err(Error::InconsistentRotation(format!(
                    "dart count mismatch at vertex {v}"
                )));
            }
            for d in ds {
                if self.origin[d] != v {
                    return Err(Error::InconsistentRotation(format!(
                        "dart {d} in rotation of {v} but origin differs"
                    )));
                }
            }
        }
        if let Some(od) = self.outer_dart {
            if !self.dart_alive(od) {
                return Err(Error::InconsistentRotation("outer dart is dead".into()));
            }
        }
        self.check_euler()
    }

    // ----- deletions -----

    /// Delete edge `e`, merging its two sides. If the outer face loses its
    /// designated dart, the merged face absorbs the designation.
    pub fn delete_edge(&mut self, e: EdgeId) {
        assert!(self.edge_alive[e]);
        let (du, dv) = self.darts_of(e);
        let mut candidates = Vec::new();
        if self.outer_dart == Some(du) || self.outer_dart == Some(dv) {
            candidates = self.face_walk(du);
            candidates.extend(self.face_walk(dv));
        }
        self.unlink_dart(du);
        self.unlink_dart(dv);
        self.edge_alive[e] = false;
        if self.outer_dart == Some(du) || self.outer_dart == Some(dv) {
            self.outer_dart = candidates.into_iter().find(|&d| self.dart_alive(d));
        }
    }

    /// Delete vertex `v` and all incident edges; the faces around it merge
    /// and the outer designation survives into the merged face if it was
    /// incident.
    pub fn delete_vertex(&mut self, v: VertexId) {
        assert!(self.vertex_alive[v]);
        let mut edges: Vec<EdgeId> = self.darts_at(v).iter().map(|&d| self.edge_of(d)).collect();
        edges.sort_unstable();
        edges.dedup();
        for e in edges {
            self.delete_edge(e);
        }
        self.vertex_alive[v] = false;
    }

    // ----- insertions inside a face -----

    /// Add a new vertex inside the face shared by `corners`, connecting it
    /// to the origin of each corner dart. Corners must appear on one face
    /// walk in walk order; each new dart is spliced in immediately before
    /// its corner.
    pub fn add_vertex_in_face(&mut self, corners: &[DartId]) -> Result<VertexId> {
        if corners.is_empty() {
            return Err(Error::InconsistentRotation("no corners given".into()));
        }
        let walk = self.face_walk(corners[0]);
        let mut pos = Vec::with_capacity(corners.len());
        for &c in corners {
            match walk.iter().position(|&d| d == c) {
                Some(p) => pos.push(p),
                None => {
                    return Err(Error::InconsistentRotation(
                        "corners not on a common face".into(),
                    ))
                }
            }
        }
        for w in pos.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::InconsistentRotation(
                    "corners not in walk order".into(),
                ));
            }
        }
        let x = self.add_vertex();
        let mut x_darts = Vec::with_capacity(corners.len());
        for &c in corners {
            let u = self.origin[c];
            let (d_ux, d_xu) = self.alloc_edge_darts(u, x);
            self.insert_dart_before(c, d_ux);
            x_darts.push(d_xu);
        }
        // rotation around x: reverse of walk order
        let m = x_darts.len();
        if m == 1 {
            self.install_single_dart(x_darts[0]);
        } else {
            for i in 0..m {
                let d = x_darts[i];
                self.rot_next[d] = x_darts[(m + i - 1) % m];
                self.rot_prev[d] = x_darts[(i + 1) % m];
            }
            self.anchor[x] = Some(x_darts[0]);
            self.dart_count[x] = m;
        }
        debug_assert!(self.check_euler().is_ok());
        Ok(x)
    }

    // ----- conversions -----

    /// Like `to_abstract`, also returning the map from abstract edge ids
    /// back to this graph's edge ids.
    pub fn to_abstract_with_ids(&self) -> (AbstractGraph, std::collections::BTreeMap<usize, EdgeId>) {
        let mut g = AbstractGraph::new(0);
        let mut map = std::collections::BTreeMap::new();
        for v in 0..self.vertex_alive.len() {
            let id = g.add_vertex();
            debug_assert_eq!(id, v);
            if !self.vertex_alive[v] {
                g.remove_vertex(v);
            }
        }
        for e in self.edge_ids() {
            let (u, v) = self.endpoints(e);
            let id = g.add_edge(u, v);
            map.insert(id, e);
        }
        (g, map)
    }

    /// Forget the embedding: same vertex ids, one abstract edge per edge.
    /// Edge ids are NOT preserved (the abstract graph renumbers densely).
    pub fn to_abstract(&self) -> AbstractGraph {
        let mut g = AbstractGraph::new(0);
        for v in 0..self.vertex_alive.len() {
            let id = g.add_vertex();
            debug_assert_eq!(id, v);
            if !self.vertex_alive[v] {
                g.remove_vertex(v);
            }
        }
        for e in self.edge_ids() {
            let (u, v) = self.endpoints(e);
            g.add_edge(u, v);
        }
        g
    }
}

// ----- duals -----

/// The dual plane graph plus the correspondence tables.
#[derive(Debug, Clone)]
pub struct Dual {
    pub graph: PlaneGraph,
    /// primal face id -> dual vertex id (identity on indices of the
    /// `faces` snapshot stored here)
    pub primal_faces: FaceSet,
    /// dual vertex of the primal outer face
    pub outer_face_vertex: VertexId,
}

/// Build the dual of a connected plane graph. Dual vertex `i` is primal
/// face `i`; edge ids coincide (edge `e` of the dual is `e*`).
pub fn dual(g: &PlaneGraph) -> Result<Dual> {
    g.require_connected()?;
    if g.edge_count() == 0 {
        // dual of a single vertex: a single vertex
        let mut d = PlaneGraph::new_empty();
        d.add_vertex();
        return Ok(Dual {
            graph: d,
            primal_faces: g.faces(),
            outer_face_vertex: 0,
        });
    }
    let fs = g.faces();
    let mut d = PlaneGraph::new_empty();
    for _ in 0..fs.faces.len() {
        d.add_vertex();
    }
    let dart_n = g.origin.len();
    d.origin = vec![DEAD; dart_n];
    d.rot_next = vec![DEAD; dart_n];
    d.rot_prev = vec![DEAD; dart_n];
    d.edge_alive = g.edge_alive.clone();
    for dart in g.darts() {
        d.origin[dart] = fs.face_of_dart[dart];
    }
    // rotation around a dual vertex (= a primal face) is the face walk order
    for f in &fs.faces {
        let m = f.walk.len();
        for i in 0..m {
            let a = f.walk[i];
            let b = f.walk[(i + 1) % m];
            d.rot_next[a] = b;
            d.rot_prev[b] = a;
        }
        if m > 0 {
            d.anchor[f.id] = Some(f.walk[0]);
            d.dart_count[f.id] = m;
        }
    }
    // outer face of the dual: the dual face corresponding to the lowest
    // primal vertex on the primal outer walk
    let outer_walk = g.outer_walk();
    let v0 = outer_walk
        .iter()
        .map(|&x| g.dart_origin(x))
        .min()
        .expect("outer walk nonempty");
    let hint = g.darts_at(v0)[0];
    d.outer_dart = Some(hint);
    debug_assert!(d.validate().is_ok());
    let outer_face_vertex = fs.outer;
    Ok(Dual {
        graph: d,
        primal_faces: fs,
        outer_face_vertex,
    })
}

/// The weak dual as an abstract graph: one vertex per bounded face, one
/// edge per primal edge with bounded faces on both sides.
#[derive(Debug, Clone)]
pub struct WeakDual {
    pub graph: AbstractGraph,
    /// per weak-dual vertex: the boundary vertex set of its face
    pub face_vertices: Vec<Vec<VertexId>>,
    /// per weak-dual vertex: the face id in the `faces()` snapshot
    pub face_ids: Vec<FaceId>,
    /// primal face id -> weak-dual vertex (DEAD for the outer face)
    pub wd_of_face: Vec<usize>,
}

pub fn weak_dual(g: &PlaneGraph) -> Result<WeakDual> {
    g.require_connected()?;
    let fs = g.faces();
    let mut wd_of_face = vec![DEAD; fs.faces.len()];
    let mut face_vertices = Vec::new();
    let mut face_ids = Vec::new();
    for f in fs.bounded() {
        wd_of_face[f.id] = face_ids.len();
        face_ids.push(f.id);
        face_vertices.push(f.vertices.clone());
    }
    let mut graph = AbstractGraph::new(face_ids.len());
    for e in g.edge_ids() {
        let (du, dv) = g.darts_of(e);
        let f1 = fs.face_of_dart[du];
        let f2 = fs.face_of_dart[dv];
        if wd_of_face[f1] != DEAD && wd_of_face[f2] != DEAD {
            graph.add_edge(wd_of_face[f1], wd_of_face[f2]);
        }
    }
    Ok(WeakDual {
        graph,
        face_vertices,
        face_ids,
        wd_of_face,
    })
}

/// The weak dual with the embedding inherited from the dual: delete the
/// outer face's dual vertex; the face that absorbed it becomes the outer
/// face of the result.
pub fn weak_dual_plane(g: &PlaneGraph) -> Result<PlaneGraph> {
    let d = dual(g)?;
    let mut wd = d.graph;
    if wd.vertex_alive(d.outer_face_vertex) {
        wd.delete_vertex(d.outer_face_vertex);
    }
    Ok(wd)
}

/// The set $u^+$: weak-dual vertices whose faces have `u` on their
/// boundary.
pub fn face_incidence(g: &PlaneGraph, u: VertexId) -> Result<BTreeSet<usize>> {
    if !g.vertex_alive(u) {
        return Err(Error::UnknownVertex(u));
    }
    let wd = weak_dual(g)?;
    let mut out = BTreeSet::new();
    for (i, vs) in wd.face_vertices.iter().enumerate() {
        if vs.binary_search(&u).is_ok() {
            out.insert(i);
        }
    }
    Ok(out)
}

// ----- outerplanarity -----

/// The fixed-point labeling: outer-boundary vertices get 1, each face the
/// minimum label on its boundary, each other vertex one more than the
/// minimum label of its incident faces.
#[derive(Debug, Clone)]
pub struct OuterplanarityLabeling {
    /// per vertex id (0 for dead ids)
    pub vertex_label: Vec<usize>,
    /// per face id in the `faces()` snapshot taken at computation time
    pub face_label: Vec<usize>,
    pub k: usize,
}

pub fn outerplanarity(g: &PlaneGraph) -> Result<OuterplanarityLabeling> {
    g.require_connected()?;
    let fs = g.faces();
    let n = g.vertex_id_bound();
    const INF: usize = usize::MAX / 2;
    let mut vl = vec![INF; n];
    for &v in &fs.faces[fs.outer].vertices {
        vl[v] = 1;
    }
    if g.edge_count() == 0 {
        // single vertex
        for v in g.vertices() {
            vl[v] = 1;
        }
    }
    let mut fl = vec![INF; fs.faces.len()];
    loop {
        let mut changed = false;
        for f in &fs.faces {
            let m = f.vertices.iter().map(|&v| vl[v]).min().unwrap_or(INF);
            if m < fl[f.id] {
                fl[f.id] = m;
                changed = true;
            }
        }
        for v in g.vertices() {
            if vl[v] == 1 {
                continue;
            }
            let mut m = INF;
            for d in g.darts_at(v) {
                m = m.min(fl[fs.face_of_dart[d]]);
            }
            if m < INF && m + 1 < vl[v] {
                vl[v] = m + 1;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let k = g.vertices().map(|v| vl[v]).max().unwrap_or(1);
    for l in vl.iter_mut() {
        if *l >= INF {
            *l = 0;
        }
    }
    Ok(OuterplanarityLabeling {
        vertex_label: vl,
        face_label: fl,
        k,
    })
}

// ----- contraction -----

#[derive(Debug, Clone, Default)]
pub struct ContractionMap {
    /// (merged vertex, first preimage, second preimage)
    pub merged: Vec<(VertexId, VertexId, VertexId)>,
}

impl ContractionMap {
    /// Preimages of `v` in the pre-contraction graph.
    pub fn preimages(&self, v: VertexId) -> Option<(VertexId, VertexId)> {
        self.merged.iter().find(|m| m.0 == v).map(|m| (m.1, m.2))
    }
}

/// Contract every edge of a matching, splicing rotations so the embedding
/// is preserved. Contracted pairs get fresh vertex ids.
pub fn contract_matching(g: &PlaneGraph, matching: &[EdgeId]) -> Result<(PlaneGraph, ContractionMap)> {
    let mut used = BTreeSet::new();
    for &e in matching {
        if !g.edge_alive(e) {
            return Err(Error::NotAMatching(format!("edge {e} is not alive")));
        }
        let (u, v) = g.endpoints(e);
        if u == v {
            return Err(Error::NotAMatching(format!("edge {e} is a loop")));
        }
        if !used.insert(u) || !used.insert(v) {
            return Err(Error::NotAMatching(format!("edge {e} shares an endpoint")));
        }
    }
    let mut h = g.clone();
    let mut map = ContractionMap::default();
    // keep the outer designation off the contracted darts
    if let Some(od) = h.outer_dart {
        let matched: BTreeSet<EdgeId> = matching.iter().copied().collect();
        if matched.contains(&h.edge_of(od)) {
            let repl = h
                .face_walk(od)
                .into_iter()
                .find(|&d| !matched.contains(&h.edge_of(d)));
            h.outer_dart = repl;
        }
    }
    let mut sorted: Vec<EdgeId> = matching.to_vec();
    sorted.sort_unstable();
    for e in sorted {
        let (du, dv) = h.darts_of(e);
        let u = h.dart_origin(du);
        let v = h.dart_origin(dv);
        let w = h.add_vertex();
        // clockwise darts after du around u, then after dv around v
        let mut seq = Vec::new();
        let mut d = h.rot_next[du];
        while d != du {
            seq.push(d);
            d = h.rot_next[d];
        }
        let mut d = h.rot_next[dv];
        while d != dv {
            seq.push(d);
            d = h.rot_next[d];
        }
        // detach the contracted darts
        h.origin[du] = DEAD;
        h.origin[dv] = DEAD;
        h.rot_next[du] = DEAD;
        h.rot_next[dv] = DEAD;
        h.rot_prev[du] = DEAD;
        h.rot_prev[dv] = DEAD;
        h.edge_alive[e] = false;
        h.vertex_alive[u] = false;
        h.vertex_alive[v] = false;
        h.anchor[u] = None;
        h.anchor[v] = None;
        h.dart_count[u] = 0;
        h.dart_count[v] = 0;
        let m = seq.len();
        for (i, &x) in seq.iter().enumerate() {
            h.origin[x] = w;
            h.rot_next[x] = seq[(i + 1) % m];
            h.rot_prev[x] = seq[(m + i - 1) % m];
        }
        if m > 0 {
            h.anchor[w] = Some(seq[0]);
            h.dart_count[w] = m;
        }
        map.merged.push((w, u, v));
    }
    debug_assert!(h.validate().is_ok());
    Ok((h, map))
}

// ----- parallel-face simplification -----

#[derive(Debug, Clone)]
pub struct ParallelDeletion {
    pub edge: EdgeId,
    pub endpoints: (VertexId, VertexId),
}

/// Repeatedly remove one copy of any parallel pair whose two edges bound a
/// common bounded face (a walk of exactly two darts from distinct edges).
pub fn simplify_parallel_faces(g: &PlaneGraph) -> (PlaneGraph, Vec<ParallelDeletion>) {
    let mut h = g.clone();
    let mut log = Vec::new();
    loop {
        let fs = h.faces();
        let mut target = None;
        for f in &fs.faces {
            if f.bounded && f.walk.len() == 2 {
                let e1 = h.edge_of(f.walk[0]);
                let e2 = h.edge_of(f.walk[1]);
                if e1 != e2 {
                    target = Some(e1.max(e2));
                    break;
                }
            }
        }
        match target {
            Some(e) => {
                let ep = h.endpoints(e);
                h.delete_edge(e);
                log.push(ParallelDeletion { edge: e, endpoints: ep });
            }
            None => break,
        }
    }
    debug_assert!(h.validate().is_ok());
    (h, log)
}

// ----- degree-1 stripping -----

#[derive(Debug, Clone)]
pub struct DegreeOneRemoval {
    pub vertex: VertexId,
    pub neighbor: VertexId,
    /// whether the face the pendant edge was embedded in was bounded
    pub face_bounded: bool,
    /// distinct vertices of that face's boundary, including `vertex`
    pub face_vertices: Vec<VertexId>,
}

/// Iteratively remove degree-1 vertices until minimum degree >= 2 or a
/// single vertex remains. The log records, per removal, the face the
/// pendant edge was embedded in (for later restoration).
pub fn strip_degree_one(g: &PlaneGraph) -> (PlaneGraph, Vec<DegreeOneRemoval>) {
    let mut h = g.clone();
    let mut log = Vec::new();
    loop {
        if h.vertex_count() <= 1 {
            break;
        }
        let v = match h.vertices().find(|&v| h.degree(v) == 1) {
            Some(v) => v,
            None => break,
        };
        let d = h.darts_at(v)[0];
        let u = h.dart_head(d);
        let walk = h.face_walk(d);
        let bounded = match h.outer_dart {
            Some(od) => !walk.contains(&od),
            None => false,
        };
        let mut vs: Vec<usize> = walk.iter().map(|&x| h.dart_origin(x)).collect();
        vs.sort_unstable();
        vs.dedup();
        h.delete_vertex(v);
        log.push(DegreeOneRemoval {
            vertex: v,
            neighbor: u,
            face_bounded: bounded,
            face_vertices: vs,
        });
    }
    debug_assert!(h.validate().is_ok());
    (h, log)
}

// ----- embedded subgraphs -----

/// The subgraph on a set of edges, same id space, with the rotation
/// restricted. Also returns, per face of `g`, the face of the subgraph
/// whose region contains it; the subgraph's outer face is set to the one
/// containing `g`'s outer face.
pub struct EmbeddedSubgraph {
    pub graph: PlaneGraph,
    pub g_faces: FaceSet,
    pub sub_faces: FaceSet,
    /// g face id -> sub face id
    pub assignment: Vec<usize>,
}

pub fn embedded_subgraph(g: &PlaneGraph, keep: &BTreeSet<EdgeId>) -> Result<EmbeddedSubgraph> {
    if keep.is_empty() {
        return Err(Error::InconsistentRotation("empty edge set".into()));
    }
    let mut sub = g.clone();
    sub.outer_dart = None;
    for e in g.edge_ids() {
        if !keep.contains(&e) {
            let (du, dv) = sub.darts_of(e);
            sub.unlink_dart(du);
            sub.unlink_dart(dv);
            sub.edge_alive[e] = false;
        }
    }
    for v in 0..sub.vertex_alive.len() {
        if sub.vertex_alive[v] && sub.dart_count[v] == 0 {
            sub.vertex_alive[v] = false;
        }
    }
    // temporary outer so faces() can run; fixed below
    let some_dart = sub.darts().next().expect("kept edges have darts");
    sub.outer_dart = Some(some_dart);
    let sub_faces0 = sub.faces();
    let g_faces = g.faces();
    let mut assignment = vec![DEAD; g_faces.faces.len()];
    for f in &g_faces.faces {
        for &d in &f.walk {
            if sub.dart_alive(d) {
                assignment[f.id] = sub_faces0.face_of_dart[d];
                break;
            }
        }
    }
    // flood across non-kept edges: both sides of such an edge lie in the
    // same subgraph face
    loop {
        let mut changed = false;
        for e in g.edge_ids() {
            if keep.contains(&e) {
                continue;
            }
            let (du, dv) = g.darts_of(e);
            let f1 = g_faces.face_of_dart[du];
            let f2 = g_faces.face_of_dart[dv];
            match (assignment[f1], assignment[f2]) {
                (DEAD, a) if a != DEAD => {
                    assignment[f1] = a;
                    changed = true;
                }
                (a, DEAD) if a != DEAD => {
                    assignment[f2] = a;
                    changed = true;
                }
                _ => {}
            }
        }
        if !changed {
            break;
        }
    }
    let outer_sub = assignment[g_faces.outer];
    debug_assert!(outer_sub != DEAD);
    sub.outer_dart = Some(sub_faces0.faces[outer_sub].walk[0]);
    let sub_faces = sub.faces();
    Ok(EmbeddedSubgraph {
        graph: sub,
        g_faces,
        sub_faces,
        assignment,
    })
}

// ----- canonical form (isomorphism of rotation systems) -----

/// A canonical encoding of the rotation system of a connected plane graph,
/// ignoring the outer face designation. Two graphs are isomorphic as
/// embedded graphs (up to relabeling, orientation preserved) iff their
/// forms are equal.
pub fn canonical_form(g: &PlaneGraph) -> Vec<usize> {
    let darts: Vec<DartId> = g.darts().collect();
    if darts.is_empty() {
        return vec![g.vertex_count()];
    }
    let mut best: Option<Vec<usize>> = None;
    for &start in &darts {
        let mut id = HashMap::new();
        let mut order = Vec::new();
        let mut stack = vec![start];
        id.insert(start, 0usize);
        order.push(start);
        while let Some(d) = stack.pop() {
            for nd in [g.rot_next(d), g.twin(d)] {
                if !id.contains_key(&nd) {
                    id.insert(nd, order.len());
                    order.push(nd);
                    stack.push(nd);
                }
            }
        }
        if order.len() != darts.len() {
            continue; // disconnected; caller beware
        }
        let mut enc = Vec::with_capacity(2 * order.len());
        for &d in &order {
            enc.push(id[&g.rot_next(d)]);
            enc.push(id[&g.twin(d)]);
        }
        if best.as_ref().map_or(true, |b| enc < *b) {
            best = Some(enc);
        }
    }
    best.unwrap()
}

// ----- hand-built constructions used across the crate -----

/// Cycle on n >= 3 vertices.
pub fn cycle(n: usize) -> PlaneGraph {
    let lists: Vec<Vec<usize>> = (0..n)
        .map(|i| vec![(i + n - 1) % n, (i + 1) % n])
        .collect();
    PlaneGraph::build_embedding(&lists).expect("cycle is planar")
}

/// Path on n >= 1 vertices.
pub fn path(n: usize) -> PlaneGraph {
    let lists: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            let mut l = Vec::new();
            if i > 0 {
                l.push(i - 1);
            }
            if i + 1 < n {
                l.push(i + 1);
            }
            l
        })
        .collect();
    PlaneGraph::build_embedding(&lists).expect("path is planar")
}

/// p x q grid in its standard embedding; vertex (i,j) has id i*q + j.
pub fn grid(p: usize, q: usize) -> PlaneGraph {
    let id = |i: usize, j: usize| i * q + j;
    let mut lists = vec![Vec::new(); p * q];
    for i in 0..p {
        for j in 0..q {
            // clockwise: up, right, down, left
            let mut l = Vec::new();
            if i > 0 {
                l.push(id(i - 1, j));
            }
            if j + 1 < q {
                l.push(id(i, j + 1));
            }
            if i + 1 < p {
                l.push(id(i + 1, j));
            }
            if j > 0 {
                l.push(id(i, j - 1));
            }
            lists[id(i, j)] = l;
        }
    }
    let mut g = PlaneGraph::build_embedding(&lists).expect("grid is planar");
    // outer face: the unique face of maximum length for p,q >= 2 grids is
    // the outer boundary; the default rule already picks it, but make it
    // explicit for 1 x q degenerate cases too.
    g.designate_outer_default();
    g
}

/// K_{2,r} with common neighbors 0 and 1 and members 2..2+r, drawn with
/// all members nested.
pub fn k2r(r: usize) -> PlaneGraph {
    let mut lists = vec![Vec::new(); 2 + r];
    lists[0] = (2..2 + r).collect();
    lists[1] = (2..2 + r).rev().collect();
    for m in 2..2 + r {
        lists[m] = vec![0, 1];
    }
    PlaneGraph::build_embedding(&lists).expect("K2r is planar")
}

/// Fan: path 0..n-2 plus an apex n-1 adjacent to every path vertex (an
/// outerplanar triangulation for n >= 3).
pub fn fan(n: usize) -> PlaneGraph {
    assert!(n >= 3);
    let apex = n - 1;
    let m = n - 1; // path vertices 0..m
    let mut lists = vec![Vec::new(); n];
    for i in 0..m {
        let mut l = Vec::new();
        if i > 0 {
            l.push(i - 1);
        }
        l.push(apex);
        if i + 1 < m {
            l.push(i + 1);
        }
        lists[i] = l;
    }
    lists[apex] = (0..m).rev().collect();
    let mut g = PlaneGraph::build_embedding(&lists).expect("fan is planar");
    g.designate_outer_default();
    g
}
