//! Gradings of orders by finite abelian groups and the universal grading.
//!
//! The universal grading is assembled from the universal orthogonal
//! decomposition `A = sum_s L_s` of the canonical Gram form: the group is
//! generated by the component labels `s` subject to `s1 + s2 = s3` whenever
//! `L_s1 * L_s2` has a nonzero projection onto `L_s3`, and the piece of
//! degree `g` is the sum of the components labelled `g`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::sync::Arc;

use rug::Integer;
use serde::{Deserialize, Serialize};

use crate::config::{escalate, Config};
use crate::embeddings::{canonical_gram, GramForm, Sign};
use crate::error::{Error, Result};
use crate::intlinalg::{
    is_zero_vec, snf, snf_diagonal, unimodular_inverse, IntMatrix, IntVec, SublatticeBasis,
};
use crate::lattice::{universal_s_decomposition, SDecomposition};
use crate::order::{group_ring, Element, Order};

/// Element of a finite abelian group: one residue per invariant factor.
pub type GroupElement = Vec<u64>;

/// `Z/d_1 x ... x Z/d_k` with `d_1 | d_2 | ... | d_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FinAbGroup {
    invariant_factors: Vec<u64>,
}

impl FinAbGroup {
    /// Factors equal to 1 are dropped; the rest must form a divisibility chain.
    pub fn new(invariant_factors: Vec<u64>) -> Result<FinAbGroup> {
        if invariant_factors.contains(&0) {
            return Err(Error::InfiniteGroup);
        }
        let factors: Vec<u64> = invariant_factors.into_iter().filter(|&d| d != 1).collect();
        if factors.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(Error::Shape(format!(
                "{factors:?} is not a divisibility chain"
            )));
        }
        Ok(FinAbGroup {
            invariant_factors: factors,
        })
    }

    pub fn trivial() -> FinAbGroup {
        FinAbGroup {
            invariant_factors: vec![],
        }
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    pub fn order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }

    pub fn is_cyclic(&self) -> bool {
        self.invariant_factors.len() <= 1
    }

    pub fn identity(&self) -> GroupElement {
        vec![0; self.invariant_factors.len()]
    }

    pub fn is_element(&self, g: &[u64]) -> bool {
        g.len() == self.invariant_factors.len()
            && g.iter().zip(&self.invariant_factors).all(|(a, d)| a < d)
    }

    /// Reduces an integer tuple into canonical residues.
    pub fn reduce(&self, v: &[Integer]) -> GroupElement {
        v.iter()
            .zip(&self.invariant_factors)
            .map(|(x, &d)| {
                Integer::from(x.modulo_ref(&Integer::from(d)))
                    .to_u64()
                    .unwrap_or(0)
            })
            .collect()
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> GroupElement {
        a.iter()
            .zip(b)
            .zip(&self.invariant_factors)
            .map(|((x, y), d)| (x + y) % d)
            .collect()
    }

    pub fn scale(&self, a: &[u64], k: &Integer) -> GroupElement {
        a.iter()
            .zip(&self.invariant_factors)
            .map(|(x, &d)| {
                let v = Integer::from(k * *x).modulo(&Integer::from(d));
                v.to_u64().unwrap_or(0)
            })
            .collect()
    }

    /// Standard generator `i` (a 1 in slot `i`).
    pub fn generator(&self, i: usize) -> GroupElement {
        let mut g = self.identity();
        g[i] = 1;
        g
    }

    pub fn elements(&self) -> Vec<GroupElement> {
        let mut out = vec![vec![]];
        for &d in &self.invariant_factors {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..d).map(move |x| {
                        let mut p = prefix.clone();
                        p.push(x);
                        p
                    })
                })
                .collect();
        }
        out
    }

    /// True iff `gens` generate the whole group.
    pub fn generated_by(&self, gens: &[GroupElement]) -> bool {
        let mut seen = BTreeSet::from([self.identity()]);
        let mut queue = VecDeque::from([self.identity()]);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = self.add(&x, g);
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        seen.len() as u64 == self.order()
    }
}

/// Homomorphism given by the images of the standard generators of `source`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    pub source: FinAbGroup,
    pub target: FinAbGroup,
    pub images: Vec<GroupElement>,
}

impl GroupHom {
    pub fn new(
        source: FinAbGroup,
        target: FinAbGroup,
        images: Vec<GroupElement>,
    ) -> Result<GroupHom> {
        if images.len() != source.invariant_factors.len()
            || images.iter().any(|g| !target.is_element(g))
        {
            return Err(Error::NoMorphism(
                "generator images do not match the groups".into(),
            ));
        }
        for (img, &d) in images.iter().zip(&source.invariant_factors) {
            if target.scale(img, &Integer::from(d)) != target.identity() {
                return Err(Error::NoMorphism(
                    "map does not respect the source relations".into(),
                ));
            }
        }
        Ok(GroupHom {
            source,
            target,
            images,
        })
    }

    pub fn identity(g: &FinAbGroup) -> GroupHom {
        let images = (0..g.invariant_factors.len())
            .map(|i| g.generator(i))
            .collect();
        GroupHom {
            source: g.clone(),
            target: g.clone(),
            images,
        }
    }

    pub fn trivial(source: &FinAbGroup, target: &FinAbGroup) -> GroupHom {
        GroupHom {
            source: source.clone(),
            target: target.clone(),
            images: vec![target.identity(); source.invariant_factors.len()],
        }
    }

    pub fn apply(&self, g: &[u64]) -> GroupElement {
        g.iter()
            .zip(&self.images)
            .fold(self.target.identity(), |acc, (k, img)| {
                self.target
                    .add(&acc, &self.target.scale(img, &Integer::from(*k)))
            })
    }

    /// Bijective on elements.
    pub fn is_isomorphism(&self) -> bool {
        self.source.order() == self.target.order()
            && self
                .source
                .elements()
                .iter()
                .map(|g| self.apply(g))
                .collect::<BTreeSet<_>>()
                .len() as u64
                == self.target.order()
    }
}

/// `Z^num_gens / <relations>` in invariant-factor form, with the image of
/// every generator and, for each standard generator of the group, an integer
/// combination of the generators mapping onto it.
pub struct Presentation {
    pub group: FinAbGroup,
    pub generator_images: Vec<GroupElement>,
    pub preimages: Vec<IntVec>,
}

pub fn group_from_relations(num_gens: usize, relations: &[IntVec]) -> Result<Presentation> {
    if relations.iter().any(|r| r.len() != num_gens) {
        return Err(Error::Shape(
            "relation length differs from the number of generators".into(),
        ));
    }
    if num_gens == 0 {
        return Ok(Presentation {
            group: FinAbGroup::trivial(),
            generator_images: vec![],
            preimages: vec![],
        });
    }
    let m = IntMatrix::from_rows(num_gens, relations);
    let (s, _, v) = snf(&m);
    let mut diag = snf_diagonal(&s, num_gens.min(relations.len()));
    diag.resize(num_gens, Integer::new());
    if diag.iter().any(|d| d.is_zero()) {
        return Err(Error::InfiniteGroup);
    }
    let kept: Vec<usize> = (0..num_gens).filter(|&i| diag[i] != 1).collect();
    let factors: Vec<u64> = kept
        .iter()
        .map(|&i| {
            diag[i]
                .to_u64()
                .ok_or_else(|| Error::Shape("group too large".into()))
        })
        .collect::<Result<_>>()?;
    let group = FinAbGroup {
        invariant_factors: factors,
    };
    let generator_images = (0..num_gens)
        .map(|j| {
            let coords: IntVec = kept.iter().map(|&i| v[(j, i)].clone()).collect();
            group.reduce(&coords)
        })
        .collect();
    let vinv = unimodular_inverse(&v)?;
    let preimages = kept.iter().map(|&i| vinv.row(i).to_vec()).collect();
    Ok(Presentation {
        group,
        generator_images,
        preimages,
    })
}

/// Pieces of a grading; absent elements have zero pieces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grading {
    pub ambient_rank: usize,
    pub group: FinAbGroup,
    pub pieces: BTreeMap<GroupElement, SublatticeBasis>,
}

impl Grading {
    /// Drops zero pieces so that equal gradings compare equal.
    pub fn new(
        ambient_rank: usize,
        group: FinAbGroup,
        pieces: impl IntoIterator<Item = (GroupElement, SublatticeBasis)>,
    ) -> Result<Grading> {
        let mut map = BTreeMap::new();
        for (g, b) in pieces {
            if !group.is_element(&g) {
                return Err(Error::Shape(format!(
                    "{g:?} is not an element of the group"
                )));
            }
            if b.ambient_rank() != ambient_rank {
                return Err(Error::Shape("piece has the wrong ambient rank".into()));
            }
            if !b.is_zero() && map.insert(g.clone(), b).is_some() {
                return Err(Error::Shape(format!("duplicate piece for {g:?}")));
            }
        }
        Ok(Grading {
            ambient_rank,
            group,
            pieces: map,
        })
    }

    /// Everything in degree zero of the trivial group.
    pub fn trivial(ambient_rank: usize) -> Grading {
        let g = FinAbGroup::trivial();
        let mut pieces = BTreeMap::new();
        if ambient_rank > 0 {
            pieces.insert(vec![], SublatticeBasis::full(ambient_rank));
        }
        Grading {
            ambient_rank,
            group: g,
            pieces,
        }
    }

    pub fn piece(&self, g: &[u64]) -> Option<&SublatticeBasis> {
        self.pieces.get(g)
    }

    pub fn support(&self) -> Vec<GroupElement> {
        self.pieces.keys().cloned().collect()
    }

    pub fn identity_piece(&self) -> Option<&SublatticeBasis> {
        self.pieces.get(&self.group.identity())
    }

    fn stacked(&self) -> (IntMatrix, Vec<(GroupElement, usize)>) {
        let mut rows = Vec::new();
        let mut owners = Vec::new();
        for (g, b) in &self.pieces {
            for v in b.vectors() {
                rows.push(v);
            }
            owners.push((g.clone(), b.rank()));
        }
        (IntMatrix::from_rows(self.ambient_rank, &rows), owners)
    }

    pub fn to_json(&self, generator_map: Option<&[GroupElement]>) -> GradingJson {
        GradingJson {
            group: GroupJson {
                invariant_factors: self.group.invariant_factors.clone(),
            },
            pieces: self
                .pieces
                .iter()
                .map(|(g, b)| PieceJson {
                    element: g.clone(),
                    basis: b
                        .vectors()
                        .iter()
                        .map(|v| v.iter().map(|x| x.to_i64().unwrap_or(i64::MAX)).collect())
                        .collect(),
                })
                .collect(),
            generator_map: generator_map.map(<[GroupElement]>::to_vec),
        }
    }

    pub fn from_json(json: &GradingJson, ambient_rank: usize) -> Result<Grading> {
        let group = FinAbGroup::new(json.group.invariant_factors.clone())?;
        let pieces = json
            .pieces
            .iter()
            .map(|p| {
                if p.basis.iter().any(|r| r.len() != ambient_rank) {
                    return Err(Error::Shape("piece basis has the wrong length".into()));
                }
                let gens: Vec<IntVec> = p
                    .basis
                    .iter()
                    .map(|r| r.iter().map(|&x| Integer::from(x)).collect())
                    .collect();
                Ok((
                    p.element.clone(),
                    SublatticeBasis::from_generators(ambient_rank, &gens),
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        Grading::new(ambient_rank, group, pieces)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupJson {
    pub invariant_factors: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceJson {
    pub element: Vec<u64>,
    pub basis: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradingJson {
    pub group: GroupJson,
    pub pieces: Vec<PieceJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator_map: Option<Vec<GroupElement>>,
}

/// Exact verdicts on the grading axioms.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GradingReport {
    pub multiplicative: bool,
    pub direct_sum: bool,
    pub one_in_identity_piece: bool,
    pub identity_piece_is_subring: bool,
    pub failures: Vec<String>,
}

impl GradingReport {
    pub fn passed(&self) -> bool {
        self.multiplicative
            && self.direct_sum
            && self.one_in_identity_piece
            && self.identity_piece_is_subring
    }
}

fn product_lies_in(
    a: &Order,
    x: &[Integer],
    y: &[Integer],
    target: Option<&SublatticeBasis>,
) -> bool {
    let z = a.mul(x, y);
    match target {
        Some(t) => t.contains(&z),
        None => is_zero_vec(&z),
    }
}

/// Checks the grading axioms with exact integer arithmetic.
pub fn verify_grading(a: &Order, gr: &Grading) -> GradingReport {
    let mut report = GradingReport::default();
    if gr.ambient_rank != a.rank() {
        report
            .failures
            .push("grading and order have different ranks".into());
        return report;
    }
    let parts: Vec<SublatticeBasis> = gr.pieces.values().cloned().collect();
    report.direct_sum =
        matches!(crate::intlinalg::direct_sum_index(&parts, a.rank()), Ok(i) if i == 1);
    if !report.direct_sum {
        report
            .failures
            .push("pieces do not form a direct sum of the order".into());
    }
    report.multiplicative = true;
    for (g, bg) in &gr.pieces {
        for (h, bh) in gr.pieces.range(g.clone()..) {
            let target = gr.pieces.get(&gr.group.add(g, h));
            let ok = bg.vectors().iter().all(|x| {
                bh.vectors()
                    .iter()
                    .all(|y| product_lies_in(a, x, y, target))
            });
            if !ok {
                report.multiplicative = false;
                report.failures.push(format!(
                    "product of pieces {g:?} and {h:?} leaves its degree"
                ));
            }
        }
    }
    let id = gr.identity_piece();
    report.one_in_identity_piece = id.is_some_and(|b| b.contains(a.one()));
    if !report.one_in_identity_piece {
        report
            .failures
            .push("1 is not in the identity piece".into());
    }
    report.identity_piece_is_subring = id.is_some_and(|b| {
        b.vectors()
            .iter()
            .all(|x| b.vectors().iter().all(|y| b.contains(&a.mul(x, y))))
    });
    if !report.identity_piece_is_subring {
        report
            .failures
            .push("identity piece is not closed under multiplication".into());
    }
    report
}

/// `f_* gr`: pieces summed over the fibres of `f`.
pub fn push_forward(gr: &Grading, f: &GroupHom) -> Result<Grading> {
    if f.source != gr.group {
        return Err(Error::Shape(
            "homomorphism source is not the grading group".into(),
        ));
    }
    let mut fibres: BTreeMap<GroupElement, Vec<IntVec>> = BTreeMap::new();
    for (g, b) in &gr.pieces {
        fibres.entry(f.apply(g)).or_default().extend(b.vectors());
    }
    Grading::new(
        gr.ambient_rank,
        f.target.clone(),
        fibres
            .into_iter()
            .map(|(d, gens)| (d, SublatticeBasis::from_generators(gr.ambient_rank, &gens))),
    )
}

/// Decomposes `x` into homogeneous parts (zero parts omitted).
pub fn homogeneous_parts(gr: &Grading, x: &[Integer]) -> Result<BTreeMap<GroupElement, Element>> {
    if x.len() != gr.ambient_rank {
        return Err(Error::Shape("element has the wrong length".into()));
    }
    let (stacked, owners) = gr.stacked();
    let coords = stacked
        .solve_left(x)
        .ok_or_else(|| Error::VerificationFailed("pieces do not span the order".into()))?;
    let mut out = BTreeMap::new();
    let mut offset = 0;
    for (g, r) in owners {
        let mut part = vec![Integer::new(); gr.ambient_rank];
        for k in offset..offset + r {
            if !coords[k].is_zero() {
                for (p, b) in part.iter_mut().zip(stacked.row(k)) {
                    *p += Integer::from(&coords[k] * b);
                }
            }
        }
        offset += r;
        if !is_zero_vec(&part) {
            out.insert(g, part);
        }
    }
    Ok(out)
}

pub fn is_homogeneous(gr: &Grading, x: &[Integer]) -> Result<bool> {
    Ok(homogeneous_parts(gr, x)?.len() <= 1)
}

/// True iff `h` is the direct sum of its intersections with the pieces.
pub fn is_homogeneous_sublattice(gr: &Grading, h: &SublatticeBasis) -> Result<bool> {
    for v in h.vectors() {
        for part in homogeneous_parts(gr, &v)?.values() {
            if !h.contains(part) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The universal grading together with the data it was built from.
#[derive(Clone, Debug)]
pub struct GradedOrder {
    pub grading: Grading,
    pub decomposition: SDecomposition,
    /// Degree of each decomposition component.
    pub generator_map: Vec<GroupElement>,
    /// Relations `s1 + s2 - s3` over the components.
    pub relations: Vec<IntVec>,
    /// Integer combinations of components mapping onto each standard generator.
    pub preimages: Vec<IntVec>,
}

impl GradedOrder {
    pub fn group(&self) -> &FinAbGroup {
        &self.grading.group
    }

    pub fn to_json(&self) -> GradingJson {
        self.grading.to_json(Some(&self.generator_map))
    }
}

/// Relations `s1 + s2 - s3` for every pair of component basis vectors whose
/// product has a nonzero `L_s3` part.
pub fn extract_relations(a: &Order, components: &[SublatticeBasis]) -> Result<Vec<IntVec>> {
    let n = a.rank();
    let k = components.len();
    let mats: Vec<&IntMatrix> = components.iter().map(SublatticeBasis::basis).collect();
    let stacked = IntMatrix::vstack(n, &mats);
    let inv = unimodular_inverse(&stacked)?;
    let mut owner = Vec::with_capacity(n);
    for (s, c) in components.iter().enumerate() {
        owner.extend(std::iter::repeat_n(s, c.rank()));
    }
    let mut rels = BTreeSet::new();
    for s1 in 0..k {
        for s2 in s1..k {
            for x in components[s1].vectors() {
                for y in components[s2].vectors() {
                    let coords = inv.left_mul_vec(&a.mul(&x, &y));
                    let hit: BTreeSet<usize> = coords
                        .iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(i, _)| owner[i])
                        .collect();
                    for s3 in hit {
                        let mut r = vec![Integer::new(); k];
                        r[s1] += 1;
                        r[s2] += 1;
                        r[s3] -= 1;
                        rels.insert(r);
                    }
                }
            }
        }
    }
    Ok(rels.into_iter().collect())
}

/// Builds the grading attached to a decomposition of the lattice of `a`.
pub fn grading_from_decomposition(a: &Order, decomposition: SDecomposition) -> Result<GradedOrder> {
    let relations = extract_relations(a, &decomposition.components)?;
    let pres = group_from_relations(decomposition.components.len(), &relations)?;
    let mut fibres: BTreeMap<GroupElement, Vec<IntVec>> = BTreeMap::new();
    for (s, c) in decomposition.components.iter().enumerate() {
        fibres
            .entry(pres.generator_images[s].clone())
            .or_default()
            .extend(c.vectors());
    }
    let grading = Grading::new(
        a.rank(),
        pres.group.clone(),
        fibres
            .into_iter()
            .map(|(g, gens)| (g, SublatticeBasis::from_generators(a.rank(), &gens))),
    )?;
    let report = verify_grading(a, &grading);
    if !report.passed() {
        return Err(Error::VerificationFailed(report.failures.join("; ")));
    }
    if !grading.group.generated_by(&grading.support()) {
        return Err(Error::VerificationFailed(
            "support does not generate the group".into(),
        ));
    }
    Ok(GradedOrder {
        grading,
        decomposition,
        generator_map: pres.generator_images,
        relations,
        preimages: pres.preimages,
    })
}

/// Universal grading of a reduced order, escalating precision on any
/// numerical or verification failure.
pub fn universal_grading(a: &Order, cfg: &Config) -> Result<GradedOrder> {
    a.require_reduced()?;
    if a.rank() == 0 {
        return Err(Error::Shape(
            "the zero ring has no grading of interest".into(),
        ));
    }
    escalate(cfg, |c| {
        let g = Arc::new(canonical_gram(a, c)?);
        let d = universal_s_decomposition(g, c.enumeration_cap)?;
        grading_from_decomposition(a, d)
    })
}

/// Checks that distinct pieces are orthogonal under `g`.
pub fn pieces_orthogonal(gr: &Grading, g: &GramForm) -> Result<bool> {
    let pieces: Vec<&SublatticeBasis> = gr.pieces.values().collect();
    for (i, p) in pieces.iter().enumerate() {
        for q in &pieces[i + 1..] {
            for u in p.vectors() {
                for v in q.vectors() {
                    if g.classify(&g.inner(&u, &v))? != Sign::Zero {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// The unique `f` with `f_* u = c`.
pub fn find_morphism(u: &GradedOrder, c: &Grading) -> Result<GroupHom> {
    let ug = &u.grading;
    if ug.ambient_rank != c.ambient_rank {
        return Err(Error::NoMorphism(
            "gradings live on different orders".into(),
        ));
    }
    let mut piece_target = BTreeMap::new();
    for (g, b) in &ug.pieces {
        let hits: Vec<&GroupElement> = c
            .pieces
            .iter()
            .filter(|(_, cb)| cb.contains_lattice(b))
            .map(|(d, _)| d)
            .collect();
        match hits.as_slice() {
            [d] => {
                piece_target.insert(g.clone(), (*d).clone());
            }
            _ => return Err(Error::AmbiguousMorphism(format!("{g:?}"))),
        }
    }
    let target = &c.group;
    let component_image: Vec<GroupElement> = u
        .generator_map
        .iter()
        .map(|g| piece_target[g].clone())
        .collect();
    let combine = |coeffs: &[Integer]| {
        coeffs
            .iter()
            .zip(&component_image)
            .fold(target.identity(), |acc, (k, img)| {
                target.add(&acc, &target.scale(img, k))
            })
    };
    if u.relations.iter().any(|r| combine(r) != target.identity()) {
        return Err(Error::NoMorphism(
            "degrees are incompatible with the relations".into(),
        ));
    }
    let images = u.preimages.iter().map(|p| combine(p)).collect();
    let f = GroupHom::new(ug.group.clone(), target.clone(), images)?;
    if u.generator_map
        .iter()
        .zip(&component_image)
        .any(|(g, d)| f.apply(g) != *d)
    {
        return Err(Error::NoMorphism(
            "induced map disagrees on a component".into(),
        ));
    }
    if push_forward(ug, &f)? != *c {
        return Err(Error::NoMorphism(
            "push-forward does not reproduce the target grading".into(),
        ));
    }
    Ok(f)
}

/// Group ring `Z[C_n1 x ... x C_nk]` with its natural grading, the group put
/// into invariant-factor form.
pub fn group_ring_with_grading(factors: &[u64]) -> Result<(Order, Grading)> {
    let (a, labels) = group_ring(factors)?;
    let k = factors.len();
    let rels: Vec<IntVec> = (0..k)
        .map(|i| {
            let mut r = vec![Integer::new(); k];
            r[i] = Integer::from(factors[i]);
            r
        })
        .collect();
    let pres = group_from_relations(k, &rels)?;
    let pieces = labels.iter().enumerate().map(|(idx, label)| {
        let g = label.iter().zip(&pres.generator_images).fold(
            pres.group.identity(),
            |acc, (c, img)| {
                pres.group
                    .add(&acc, &pres.group.scale(img, &Integer::from(*c)))
            },
        );
        (
            g,
            SublatticeBasis::from_generators(a.rank(), &[a.basis_element(idx)]),
        )
    });
    let gr = Grading::new(a.rank(), pres.group.clone(), pieces)?;
    Ok((a, gr))
}
