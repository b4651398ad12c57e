//! Conflict-avoiding codes of weight 3: the data model, the difference-set
//! disjointness verifier, and the optimal construction for odd prime lengths
//! built from doubling chains and diagonal-equation triples.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::diagonal::{cac_size_sheet, find_solvable_generator, CacSizeSheet};
use crate::error::{Error, Result};
use crate::field::{h_params, FieldCtx, SubgroupCtx};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CodewordKind {
    Equi,
    Nonequi,
}

/// A weight-3 codeword: three distinct residues mod n. Equi-difference
/// codewords have the shape {0, a, 2a}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Codeword {
    pub elements: [u64; 3],
    pub kind: CodewordKind,
}

impl Codeword {
    pub fn new(mut elements: [u64; 3], kind: CodewordKind, n: u64) -> Result<Codeword> {
        elements.sort_unstable();
        if elements.iter().any(|&e| e >= n) {
            return Err(Error::Domain(format!(
                "codeword {elements:?} has elements outside 0..{n}"
            )));
        }
        if elements[0] == elements[1] || elements[1] == elements[2] {
            return Err(Error::Domain(format!(
                "codeword {elements:?} has repeated elements"
            )));
        }
        let w = Codeword { elements, kind };
        if kind == CodewordKind::Equi && !w.has_equi_shape(n) {
            return Err(Error::Domain(format!(
                "codeword {elements:?} is marked equi but is not of the form {{0, a, 2a}}"
            )));
        }
        Ok(w)
    }

    pub fn equi(a: u64, n: u64) -> Result<Codeword> {
        Codeword::new([0, a % n, a % n * 2 % n], CodewordKind::Equi, n)
    }

    fn has_equi_shape(&self, n: u64) -> bool {
        self.elements[0] == 0
            && (self.elements[2] == self.elements[1] * 2 % n
                || self.elements[1] == self.elements[2] * 2 % n)
    }
}

/// The set of pairwise differences x_i - x_j mod n, sorted.
pub fn difference_set(w: &Codeword, n: u64) -> Vec<u64> {
    let mut out = BTreeSet::new();
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                out.insert((n + w.elements[i] - w.elements[j]) % n);
            }
        }
    }
    out.into_iter().collect()
}

/// A collection of weight-3 codewords over Z/nZ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CacCode {
    pub n: u64,
    pub codewords: Vec<Codeword>,
}

impl CacCode {
    pub fn size(&self) -> usize {
        self.codewords.len()
    }

    /// Union of all difference sets; disjointness makes it a true union.
    pub fn delta_union(&self) -> BTreeSet<u64> {
        self.codewords
            .iter()
            .flat_map(|w| difference_set(w, self.n))
            .collect()
    }

    /// Canonical order: ascending by the smallest element of the
    /// difference set.
    pub fn sort_canonical(&mut self) {
        let n = self.n;
        self.codewords
            .sort_by_key(|w| (difference_set(w, n)[0], w.elements));
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Valid,
    Conflict {
        first: usize,
        second: usize,
        residue: u64,
    },
}

/// Valid iff all pairwise difference sets are disjoint; reports the first
/// clash otherwise. Structural problems (bad residues, lying kinds) are
/// errors, not conflicts.
pub fn verify_cac(code: &CacCode) -> Result<Verdict> {
    if code.n < 2 {
        return Err(Error::Domain("code length must be at least 2".into()));
    }
    let mut owner: HashMap<u64, usize> = HashMap::new();
    for (i, w) in code.codewords.iter().enumerate() {
        // revalidate; imported codes may carry arbitrary claims
        Codeword::new(w.elements, w.kind, code.n)?;
        for d in difference_set(w, code.n) {
            if let Some(&j) = owner.get(&d) {
                return Ok(Verdict::Conflict {
                    first: j,
                    second: i,
                    residue: d,
                });
            }
            owner.insert(d, i);
        }
    }
    Ok(Verdict::Valid)
}

/// A coset-structured additive triple family: (a_i, b_i, c_i) sums to zero
/// and lives in the cosets g^{3i-3}H, g^{3i-2}H, g^{3i-1}H of H = <-1, 2>.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TripleWitness {
    pub p: u64,
    pub g: u64,
    pub x: u64,
    pub y: u64,
    pub triples: Vec<[u64; 3]>,
}

/// Derives the full triple family from one diagonal solution with xy != 0.
pub fn derive_triples(p: u64, g: u64, x: u64, y: u64) -> Result<TripleWitness> {
    let field = FieldCtx::prime(p)?;
    derive_triples_in(&field, g, x, y)
}

pub fn derive_triples_in(field: &Arc<FieldCtx>, g: u64, x: u64, y: u64) -> Result<TripleWitness> {
    let p = field.p();
    let params = h_params(p)?;
    let ell0 = params.ell0;
    if ell0 < 3 {
        return Err(Error::Domain(format!(
            "index of <-1,2> is {ell0}; triples need at least 3 cosets"
        )));
    }
    let ge = field.elem(g);
    if !field.is_generator(ge) {
        return Err(Error::NotAGenerator(format!("{g}")));
    }
    let xe = field.elem(x);
    let ye = field.elem(y);
    if xe.is_zero() || ye.is_zero() {
        return Err(Error::Domain("solution must have x*y != 0".into()));
    }
    if !field.eval_diagonal(ell0, ge, xe, ye).is_zero() {
        return Err(Error::Domain(format!(
            "({x}, {y}) does not solve the diagonal equation for g = {g}, ell0 = {ell0}"
        )));
    }
    let sub = SubgroupCtx::minus_one_and_two(field.clone())?;
    let b = field.mul(ge, field.pow(ye, ell0));
    let c = field.mul(field.mul(ge, ge), field.pow(xe, ell0));
    // base relation 1 + b + c = 0
    if !field
        .add(field.add(field.one(), b), c)
        .is_zero()
    {
        return Err(Error::Consistency("base relation 1 + b + c != 0".into()));
    }
    let count = ell0 / 3;
    let mut triples = Vec::with_capacity(count as usize);
    for i in 1..=count {
        let scale = field.pow(ge, 3 * (i - 1));
        let a_i = scale;
        let b_i = field.mul(scale, b);
        let c_i = field.mul(scale, c);
        if !field.add(field.add(a_i, b_i), c_i).is_zero() {
            return Err(Error::Consistency(format!("triple {i} does not sum to zero")));
        }
        for (offset, elem) in [(0u64, a_i), (1, b_i), (2, c_i)] {
            let expected = sub.coset_of(field.pow(ge, 3 * (i - 1) + offset))?;
            if sub.coset_of(elem)? != expected {
                return Err(Error::Consistency(format!(
                    "triple {i} component {offset} lies in the wrong coset"
                )));
            }
        }
        triples.push([a_i.index(), b_i.index(), c_i.index()]);
    }
    Ok(TripleWitness {
        p,
        g,
        x,
        y,
        triples,
    })
}

/// The outcome of the optimal construction.
#[derive(Debug, Clone)]
pub struct CacBuild {
    pub code: CacCode,
    pub sheet: CacSizeSheet,
    pub witness: Option<TripleWitness>,
}

/// Builds an optimal weight-3 code of odd prime length p.
///
/// Every coset of H = <-1, 2> splits into |H|/2 sign-classes {+-r*2^i} that
/// a doubling chain pairs up two at a time; each equi codeword {0, u, 2u}
/// consumes one adjacent pair. When 4 | o_p(2) the pairing is perfect and
/// (p-1)/4 equi codewords cover everything. Otherwise each coset leaves one
/// class over; a diagonal-equation witness supplies floor(ell0/3) zero-sum
/// triples whose codewords absorb the leftover classes of the cosets they
/// touch, and the remaining ell0 mod 3 cosets simply leave a pair uncovered.
pub fn build_optimal_cac(p: u64) -> Result<CacBuild> {
    let sheet = cac_size_sheet(p)?;
    let field = FieldCtx::prime(p)?;
    let params = h_params(p)?;
    let ell0 = params.ell0;
    let classes = params.h_order / 2;
    let sub = SubgroupCtx::minus_one_and_two(field.clone())?;

    let target = if params.o2 % 4 == 0 {
        (p - 1) / 4
    } else {
        sheet.m_target.expect("m_target is set when 4 does not divide o2")
    };

    let mut codewords = Vec::with_capacity(target as usize);
    let mut roots: Vec<Option<u64>> = vec![None; ell0 as usize];
    let mut witness = None;

    if params.o2 % 4 != 0 && ell0 >= 3 {
        let w = find_solvable_generator(&field, ell0, true)?.ok_or_else(|| {
            Error::Construction(format!(
                "no generator of F_{p} admits a diagonal solution for ell0 = {ell0} \
                 (scanned all candidates); cannot place non-equi codewords"
            ))
        })?;
        let tw = derive_triples_in(&field, w.g.index(), w.x.index(), w.y.index())?;
        for t in &tw.triples {
            let [a, b, c] = *t;
            codewords.push(Codeword::new(
                [0, a, (p - c) % p],
                CodewordKind::Nonequi,
                p,
            )?);
            for elem in [a, b, c] {
                let label = sub.coset_of(field.elem(elem))? as usize;
                roots[label] = Some(elem);
            }
        }
        witness = Some(tw);
    }

    // untouched cosets are rooted at their minimal positive representative
    for r in 1..p {
        let label = sub.coset_of(field.elem(r))? as usize;
        if roots[label].is_none() {
            roots[label] = Some(r);
        }
    }

    for root in roots.into_iter().map(|r| r.expect("every coset has a root")) {
        if params.o2 % 4 == 0 {
            // perfect pairing: classes (2j, 2j+1)
            let mut u = root;
            for _ in 0..classes / 2 {
                codewords.push(Codeword::equi(u, p)?);
                u = u * 4 % p;
            }
        } else {
            // leftover pairing: classes (2j+1, 2j+2), leaving {+-root}
            let mut u = root * 2 % p;
            for _ in 0..(classes - 1) / 2 {
                codewords.push(Codeword::equi(u, p)?);
                u = u * 4 % p;
            }
        }
    }

    let mut code = CacCode { n: p, codewords };
    code.sort_canonical();
    if verify_cac(&code)? != Verdict::Valid {
        return Err(Error::Consistency(format!(
            "construction for p = {p} produced overlapping difference sets"
        )));
    }
    if code.size() as u64 != target {
        return Err(Error::Consistency(format!(
            "construction for p = {p} has size {}, expected {target}",
            code.size()
        )));
    }
    Ok(CacBuild {
        code,
        sheet,
        witness,
    })
}

// ---------------------------------------------------------------------------
// JSON document
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessDoc {
    pub g: u64,
    pub x: u64,
    pub y: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct CodewordDoc {
    elements: [u64; 3],
    kind: CodewordKind,
    delta: Vec<u64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct CacDocument {
    n: u64,
    size: u64,
    codewords: Vec<CodewordDoc>,
    witness: Option<WitnessDoc>,
}

/// Canonical JSON for a valid code; refuses invalid input.
pub fn export_cac(code: &CacCode, witness: Option<WitnessDoc>) -> Result<String> {
    if verify_cac(code)? != Verdict::Valid {
        return Err(Error::Domain(
            "refusing to export a code that fails verification".into(),
        ));
    }
    let mut sorted = code.clone();
    sorted.sort_canonical();
    let doc = CacDocument {
        n: sorted.n,
        size: sorted.size() as u64,
        codewords: sorted
            .codewords
            .iter()
            .map(|w| CodewordDoc {
                elements: w.elements,
                kind: w.kind,
                delta: difference_set(w, sorted.n),
            })
            .collect(),
        witness,
    };
    serde_json::to_string(&doc).map_err(|e| Error::Parse(e.to_string()))
}

/// Parses and structurally validates an exported code. Disjointness is the
/// caller's concern (`verify_cac`).
pub fn import_cac(text: &str) -> Result<(CacCode, Option<WitnessDoc>)> {
    let doc: CacDocument = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if doc.size as usize != doc.codewords.len() {
        return Err(Error::Parse(format!(
            "size field {} does not match {} codewords",
            doc.size,
            doc.codewords.len()
        )));
    }
    let mut codewords = Vec::with_capacity(doc.codewords.len());
    for cw in &doc.codewords {
        let w = Codeword::new(cw.elements, cw.kind, doc.n)?;
        let delta = difference_set(&w, doc.n);
        if delta != cw.delta {
            return Err(Error::Parse(format!(
                "stored difference set {:?} does not match recomputed {:?}",
                cw.delta, delta
            )));
        }
        codewords.push(w);
    }
    Ok((
        CacCode {
            n: doc.n,
            codewords,
        },
        doc.witness,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tables::reference_cac_31;

    #[test]
    fn difference_sets() {
        let w = Codeword::new([0, 2, 5], CodewordKind::Nonequi, 31).unwrap();
        assert_eq!(difference_set(&w, 31), vec![2, 3, 5, 26, 28, 29]);
        let e = Codeword::equi(4, 31).unwrap();
        assert_eq!(difference_set(&e, 31), vec![4, 8, 23, 27]);
        // {0, a, 2a} always collapses to four differences
        for a in 1..31u64 {
            if a * 2 % 31 != 0 {
                let w = Codeword::equi(a, 31).unwrap();
                assert_eq!(difference_set(&w, 31).len(), 4);
            }
        }
    }

    #[test]
    fn verify_published_example() {
        let code = reference_cac_31();
        assert_eq!(verify_cac(&code).unwrap(), Verdict::Valid);
        assert_eq!(code.size(), 7);
        assert_eq!(code.delta_union().len(), 30); // covers all of F_31^x
    }

    #[test]
    fn verify_detects_conflicts() {
        let code = CacCode {
            n: 11,
            codewords: vec![
                Codeword::new([0, 1, 2], CodewordKind::Equi, 11).unwrap(),
                Codeword::new([0, 2, 4], CodewordKind::Equi, 11).unwrap(),
            ],
        };
        assert_eq!(
            verify_cac(&code).unwrap(),
            Verdict::Conflict {
                first: 0,
                second: 1,
                residue: 2
            }
        );
        let empty = CacCode {
            n: 11,
            codewords: vec![],
        };
        assert_eq!(verify_cac(&empty).unwrap(), Verdict::Valid);
    }

    #[test]
    fn triples_for_31() {
        let field = FieldCtx::prime(31).unwrap();
        let w = find_solvable_generator(&field, 3, true).unwrap().unwrap();
        let tw = derive_triples(31, w.g.index(), w.x.index(), w.y.index()).unwrap();
        assert_eq!(tw.triples.len(), 1);
        let [a, b, c] = tw.triples[0];
        assert_eq!((a + b + c) % 31, 0);
        // the published triple (2, 3, -5) spreads over three distinct cosets
        let sub = SubgroupCtx::minus_one_and_two(field.clone()).unwrap();
        let labels: BTreeSet<u64> = [2u64, 3, 26]
            .iter()
            .map(|&v| sub.coset_of(field.elem(v)).unwrap())
            .collect();
        assert_eq!(labels.len(), 3);
    }

    #[test]
    fn triple_scaling_invariance() {
        let field = FieldCtx::prime(31).unwrap();
        let sub = SubgroupCtx::minus_one_and_two(field.clone()).unwrap();
        let w = find_solvable_generator(&field, 3, true).unwrap().unwrap();
        let tw = derive_triples_in(&field, w.g.index(), w.x.index(), w.y.index()).unwrap();
        for h in sub.elements() {
            for t in &tw.triples {
                let labels: Vec<u64> = t
                    .iter()
                    .map(|&v| sub.coset_of(field.mul(field.elem(v), h)).unwrap())
                    .collect();
                let original: Vec<u64> = t
                    .iter()
                    .map(|&v| sub.coset_of(field.elem(v)).unwrap())
                    .collect();
                assert_eq!(labels, original);
            }
        }
    }

    #[test]
    fn triples_reject_bad_input() {
        assert!(derive_triples(7, 3, 1, 1).is_err()); // ell0 = 1
        assert!(derive_triples(31, 3, 1, 1).is_err()); // not a solution
    }

    #[test]
    fn build_small_primes() {
        let b31 = build_optimal_cac(31).unwrap();
        assert_eq!(b31.code.size(), 7);
        let nonequi = b31
            .code
            .codewords
            .iter()
            .filter(|w| w.kind == CodewordKind::Nonequi)
            .count();
        assert_eq!(nonequi, 1);
        assert!(b31.witness.is_some());

        let b5 = build_optimal_cac(5).unwrap();
        assert_eq!(b5.code.size(), 1);
        assert_eq!(b5.code.codewords[0].elements, [0, 1, 2]);

        let b7 = build_optimal_cac(7).unwrap();
        assert_eq!(b7.code.size(), 1);
        assert!(b7.witness.is_none()); // ell0 = 1, no triples needed

        assert!(build_optimal_cac(3).is_err());
        assert!(build_optimal_cac(9).is_err());
    }

    #[test]
    fn built_codes_validate_up_to_500() {
        for p in (5..=500u64).filter(|&p| crate::nt::is_prime(p)) {
            let b = build_optimal_cac(p).unwrap();
            assert_eq!(verify_cac(&b.code).unwrap(), Verdict::Valid, "p = {p}");
            let expected = if b.sheet.o2 % 4 == 0 {
                (p - 1) / 4
            } else {
                b.sheet.m_target.unwrap()
            };
            assert_eq!(b.code.size() as u64, expected, "p = {p}");
            // delta counts: 4 per equi codeword, 6 per nonequi
            let equi = b
                .code
                .codewords
                .iter()
                .filter(|w| w.kind == CodewordKind::Equi)
                .count();
            let nonequi = b.code.size() - equi;
            for w in &b.code.codewords {
                let len = difference_set(w, p).len();
                match w.kind {
                    CodewordKind::Equi => assert_eq!(len, 4),
                    CodewordKind::Nonequi => assert_eq!(len, 6),
                }
            }
            assert_eq!(b.code.delta_union().len(), 4 * equi + 6 * nonequi);
        }
    }

    #[test]
    fn export_import_round_trip() {
        let b = build_optimal_cac(31).unwrap();
        let w = b.witness.as_ref().map(|t| WitnessDoc {
            g: t.g,
            x: t.x,
            y: t.y,
        });
        let json = export_cac(&b.code, w).unwrap();
        let (code, witness) = import_cac(&json).unwrap();
        assert_eq!(code, b.code);
        assert_eq!(witness, w);
        // an exported empty code keeps its shape
        let empty = CacCode {
            n: 11,
            codewords: vec![],
        };
        let json = export_cac(&empty, None).unwrap();
        assert!(json.contains(r#""codewords":[]"#));
    }

    #[test]
    fn export_refuses_invalid() {
        let bad = CacCode {
            n: 11,
            codewords: vec![
                Codeword::new([0, 1, 2], CodewordKind::Equi, 11).unwrap(),
                Codeword::new([0, 2, 4], CodewordKind::Equi, 11).unwrap(),
            ],
        };
        assert!(export_cac(&bad, None).is_err());
    }
}
