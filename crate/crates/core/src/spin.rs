//! Spin moduli signatures and their boundary combinatorics: emptiness and
//! degree predicates, enumeration of boundary divisor types (ordinary-node
//! and blown-up-node degenerations, refined by parity where a tail carries
//! honest theta characteristics), and Picard generator counting.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::arf::theta_counts_closed_form;
use crate::graphs::stable_splits;

/// Largest genus supported by [`enumerate_boundary`].
pub const BOUNDARY_GENUS_MAX: u32 = 2;
/// Largest marking count supported by [`enumerate_boundary`].
pub const BOUNDARY_MARKINGS_MAX: u32 = 5;

#[derive(Debug, Error, PartialEq)]
pub enum SpinError {
    #[error("twist values must be 0 or 1")]
    BadTwist,
    #[error("(g, n) = ({0}, {1}) violates 2g - 2 + n > 0")]
    UnstableSignature(u32, u32),
    #[error("moduli space is empty: twist sum {0} is odd")]
    EmptyModuli(u32),
    #[error("(g, n) = ({0}, {1}) outside the supported window g <= {2}, n <= {3}")]
    OutOfWindow(u32, u32, u32, u32),
}

/// Parity of a theta characteristic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

/// The discrete index (g, n, m_1..m_n) of a spin moduli space: square roots
/// of the dualizing sheaf twisted by sum of m_i p_i on genus-g curves with
/// n marked points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpinSignature {
    genus: u32,
    twists: Vec<u8>,
}

impl SpinSignature {
    pub fn new(genus: u32, twists: Vec<u8>) -> Result<Self, SpinError> {
        if twists.iter().any(|&m| m > 1) {
            return Err(SpinError::BadTwist);
        }
        let n = twists.len() as u32;
        if 2 * i64::from(genus) - 2 + i64::from(n) <= 0 {
            return Err(SpinError::UnstableSignature(genus, n));
        }
        Ok(SpinSignature { genus, twists })
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn n(&self) -> u32 {
        self.twists.len() as u32
    }

    pub fn twists(&self) -> &[u8] {
        &self.twists
    }

    pub fn twist_sum(&self) -> u32 {
        self.twists.iter().map(|&m| u32::from(m)).sum()
    }

    /// The moduli space is nonempty iff the total twist is even.
    pub fn is_nonempty(&self) -> bool {
        self.twist_sum().is_multiple_of(2)
    }

    /// Degree g - 1 + (sum m_i)/2 of the square roots being parameterized.
    pub fn spin_degree(&self) -> Result<i64, SpinError> {
        if !self.is_nonempty() {
            return Err(SpinError::EmptyModuli(self.twist_sum()));
        }
        Ok(i64::from(self.genus) - 1 + i64::from(self.twist_sum()) / 2)
    }

    /// Cardinality 2^{2g} of the generic fiber over the moduli of curves.
    pub fn fiber_degree(&self) -> u64 {
        1u64 << (2 * self.genus)
    }
}

impl fmt::Display for SpinSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let twists = self.twists.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "({},{},({}))", self.genus, self.n(), twists)
    }
}

/// One side of a degeneration: the data induced on a component of the
/// normalization. Markings keep their original labels; the preimages of the
/// node come last, with their own twists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpinSide {
    pub genus: u32,
    pub markings: Vec<u32>,
    pub twists: Vec<u8>,
    pub node_twists: Vec<u8>,
    pub parity: Option<Parity>,
}

impl SpinSide {
    fn new(genus: u32, markings: Vec<u32>, twists: Vec<u8>, node_twists: Vec<u8>) -> Self {
        SpinSide {
            genus,
            markings,
            twists,
            node_twists,
            parity: None,
        }
    }

    pub fn total_twist(&self) -> u32 {
        self.twists.iter().chain(&self.node_twists).map(|&m| u32::from(m)).sum()
    }

    /// The side, viewed as its own spin signature (node preimages count as
    /// markings). Errors double as the stability/nonemptiness check.
    pub fn signature(&self) -> Result<SpinSignature, SpinError> {
        let all: Vec<u8> = self.twists.iter().chain(&self.node_twists).copied().collect();
        SpinSignature::new(self.genus, all)
    }

    /// Degree of the square root carried by this side.
    pub fn root_degree(&self) -> i64 {
        i64::from(self.genus) - 1 + i64::from(self.total_twist()) / 2
    }

    /// Parity refinement applies only to positive-genus sides whose induced
    /// twist vector is identically zero; there the root is an honest theta
    /// characteristic with a deformation-invariant parity.
    pub fn qualifies_for_parity(&self) -> bool {
        self.genus > 0 && self.twists.iter().all(|&m| m == 0) && self.node_twists.iter().all(|&m| m == 0)
    }

    /// What the general member of the divisor carries on this component.
    pub fn member_description(&self) -> String {
        if self.genus == 0 {
            return match self.root_degree() {
                0 => "the line bundle O".to_string(),
                1 => "the line bundle O(P)".to_string(),
                d => format!("a line bundle of degree {d}"),
            };
        }
        let untwisted = self.total_twist() == 0;
        if untwisted {
            return match (self.parity, self.genus) {
                (Some(Parity::Even), 1) => "an even square root of O".to_string(),
                (Some(Parity::Even), _) => "an even theta characteristic".to_string(),
                // the unique odd root of O on an elliptic curve is O itself
                (Some(Parity::Odd), 1) => "the line bundle O".to_string(),
                (Some(Parity::Odd), _) => "an odd theta characteristic".to_string(),
                (None, 1) => "a square root of O".to_string(),
                (None, _) => "a theta characteristic".to_string(),
            };
        }
        let mut divisor: Vec<String> = self
            .markings
            .iter()
            .zip(&self.twists)
            .filter(|&(_, &m)| m == 1)
            .map(|(&l, _)| format!("p{l}"))
            .collect();
        let node_names: Vec<&str> = match self.node_twists.len() {
            1 => vec!["node"],
            _ => vec!["node1", "node2"],
        };
        for (i, &m) in self.node_twists.iter().enumerate() {
            if m == 1 {
                divisor.push(node_names[i].to_string());
            }
        }
        let base = if self.genus == 1 { "O" } else { "omega" };
        format!("a square root of {base}({})", divisor.join(" + "))
    }
}

/// Topological kind of a boundary divisor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryKind {
    /// Irreducible degeneration with an ordinary node (node twists 1, 1).
    AIrr,
    /// Irreducible degeneration with a blown-up node (node twists 0, 0).
    BIrr,
    /// Separating degeneration with odd side twist: ordinary node.
    Delta,
    /// Separating degeneration with even side twist: blown-up node,
    /// refined by the parities of qualifying sides.
    EvenSplit,
}

/// How the node is realized on the general member.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeMode {
    Ordinary,
    Exceptional,
}

/// One boundary divisor type: kind, its sides (one for irreducible types,
/// two for separating ones, distinguished side first), and a display label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundaryDivisorType {
    pub kind: BoundaryKind,
    pub sides: Vec<SpinSide>,
    pub label: String,
}

impl BoundaryDivisorType {
    pub fn node_mode(&self) -> NodeMode {
        match self.kind {
            BoundaryKind::AIrr | BoundaryKind::Delta => NodeMode::Ordinary,
            BoundaryKind::BIrr | BoundaryKind::EvenSplit => NodeMode::Exceptional,
        }
    }

    /// Every side must be stable with even total twist, and the per-kind
    /// twist rules must hold.
    pub fn validate(&self) -> Result<(), SpinError> {
        for side in &self.sides {
            let sig = side.signature()?;
            if !sig.is_nonempty() {
                return Err(SpinError::EmptyModuli(sig.twist_sum()));
            }
        }
        Ok(())
    }

    fn sort_key(&self) -> (u8, usize, Vec<u32>, i64, Vec<u8>) {
        let class = match self.kind {
            BoundaryKind::AIrr => 0,
            BoundaryKind::BIrr => 1,
            BoundaryKind::Delta | BoundaryKind::EvenSplit => 2,
        };
        let distinguished = &self.sides[0];
        let parity_ranks = self
            .sides
            .iter()
            .map(|s| match s.parity {
                None => 0,
                Some(Parity::Even) => 1,
                Some(Parity::Odd) => 2,
            })
            .collect();
        (
            class,
            distinguished.markings.len(),
            distinguished.markings.clone(),
            -i64::from(distinguished.genus),
            parity_ranks,
        )
    }

    /// One-line structured record with stable field order.
    pub fn to_record(&self) -> String {
        let kind = match self.kind {
            BoundaryKind::AIrr => "A_irr",
            BoundaryKind::BIrr => "B_irr",
            BoundaryKind::Delta => "Delta",
            BoundaryKind::EvenSplit => "EvenSplit",
        };
        let split = if self.sides.len() == 2 {
            let d = &self.sides[0];
            format!(" split=({},{})", d.genus, set_braces(&d.markings))
        } else {
            String::new()
        };
        let node = match self.node_mode() {
            NodeMode::Ordinary => "ordinary",
            NodeMode::Exceptional => "exceptional",
        };
        let parity = self
            .sides
            .iter()
            .map(|s| match s.parity {
                None => "-",
                Some(Parity::Even) => "even",
                Some(Parity::Odd) => "odd",
            })
            .join("|");
        let sides = self
            .sides
            .iter()
            .map(|s| {
                format!(
                    "(g={},S={},m=({}),node=({}))",
                    s.genus,
                    set_braces(&s.markings),
                    s.twists.iter().map(|m| m.to_string()).join(","),
                    s.node_twists.iter().map(|m| m.to_string()).join(","),
                )
            })
            .join(" ");
        format!("{} kind={kind}{split} node={node} parity=({parity}) sides={sides}", self.label)
    }
}

impl fmt::Display for BoundaryDivisorType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_record())
    }
}

use itertools::Itertools;

fn set_braces(labels: &[u32]) -> String {
    format!("{{{}}}", labels.iter().map(|l| l.to_string()).join(","))
}

fn split_label(prefix: &str, side: &SpinSide) -> String {
    format!("{prefix}_{{{},{}}}", side.genus, set_braces(&side.markings))
}

/// Enumerate the boundary divisor types of a nonempty spin space:
/// the two irreducible kinds when g >= 1, one Delta type per odd stable
/// split, and one type per realizable parity assignment for each even
/// stable split. Output is sorted deterministically (irreducible first,
/// then by distinguished side and parity).
pub fn enumerate_boundary(sig: &SpinSignature) -> Result<Vec<BoundaryDivisorType>, SpinError> {
    if !sig.is_nonempty() {
        return Err(SpinError::EmptyModuli(sig.twist_sum()));
    }
    let (g, n) = (sig.genus(), sig.n());
    if g > BOUNDARY_GENUS_MAX || n > BOUNDARY_MARKINGS_MAX {
        return Err(SpinError::OutOfWindow(g, n, BOUNDARY_GENUS_MAX, BOUNDARY_MARKINGS_MAX));
    }

    let mut out: Vec<BoundaryDivisorType> = Vec::new();
    let all_markings: Vec<u32> = (1..=n).collect();

    if g >= 1 {
        for (kind, node_twist, label) in [
            (BoundaryKind::AIrr, 1u8, "A_irr"),
            (BoundaryKind::BIrr, 0u8, "B_irr"),
        ] {
            let side = SpinSide::new(
                g - 1,
                all_markings.clone(),
                sig.twists().to_vec(),
                vec![node_twist, node_twist],
            );
            out.push(BoundaryDivisorType {
                kind,
                sides: vec![side],
                label: label.to_string(),
            });
        }
    }

    for (g1, s1) in stable_splits(g, n) {
        let g2 = g - g1;
        let s2: Vec<u32> = (1..=n).filter(|l| !s1.contains(l)).collect();
        let twist_of = |s: &[u32]| -> Vec<u8> {
            s.iter().map(|&l| sig.twists()[(l - 1) as usize]).collect()
        };
        let (t1, t2) = (twist_of(&s1), twist_of(&s2));
        let odd = t1.iter().map(|&m| u32::from(m)).sum::<u32>() % 2 == 1;
        let node_twist = u8::from(odd);
        let side1 = SpinSide::new(g1, s1.clone(), t1, vec![node_twist]);
        let side2 = SpinSide::new(g2, s2, t2, vec![node_twist]);

        if odd {
            let sides = order_sides(side1, side2);
            let label = split_label("Delta", &sides[0]);
            out.push(BoundaryDivisorType {
                kind: BoundaryKind::Delta,
                sides,
                label,
            });
        } else {
            out.extend(even_split_types(side1, side2));
        }
    }

    out.sort_by_key(|t| t.sort_key());
    for t in &out {
        t.validate().expect("emitted boundary type is internally consistent");
    }
    Ok(out)
}

/// Distinguished side first: the unique parity-qualified side if there is
/// exactly one, otherwise the higher-genus side, ties broken by the smaller
/// marking set and then by parity (even before odd).
fn order_sides(a: SpinSide, b: SpinSide) -> Vec<SpinSide> {
    let a_first = match (a.qualifies_for_parity(), b.qualifies_for_parity()) {
        (true, false) => true,
        (false, true) => false,
        _ => {
            let rank = |s: &SpinSide| {
                (
                    std::cmp::Reverse(s.genus),
                    s.markings.clone(),
                    parity_rank(s.parity),
                )
            };
            rank(&a) <= rank(&b)
        }
    };
    if a_first {
        vec![a, b]
    } else {
        vec![b, a]
    }
}

fn parity_rank(p: Option<Parity>) -> u8 {
    match p {
        None => 0,
        Some(Parity::Even) => 1,
        Some(Parity::Odd) => 2,
    }
}

fn realizable_parities(side: &SpinSide) -> Vec<Option<Parity>> {
    if !side.qualifies_for_parity() {
        return vec![None];
    }
    let (even, odd) = theta_counts_closed_form(side.genus);
    let mut choices = Vec::new();
    if even > 0 {
        choices.push(Some(Parity::Even));
    }
    if odd > 0 {
        choices.push(Some(Parity::Odd));
    }
    choices
}

/// All parity classes of a blown-up separating type. Two assignments merge
/// exactly when the sides carry fully identical data (which forces both
/// marking sets empty) and the assignments differ by the side swap.
fn even_split_types(side1: SpinSide, side2: SpinSide) -> Vec<BoundaryDivisorType> {
    let identical = side1.genus == side2.genus
        && side1.markings == side2.markings
        && side1.twists == side2.twists
        && side1.node_twists == side2.node_twists;
    let mut assignments: Vec<(Option<Parity>, Option<Parity>)> = Vec::new();
    for p1 in realizable_parities(&side1) {
        for p2 in realizable_parities(&side2) {
            if identical && (p2, p1) < (p1, p2) {
                continue; // merged with the swapped assignment
            }
            assignments.push((p1, p2));
        }
    }
    assignments
        .into_iter()
        .map(|(p1, p2)| {
            let mut a = side1.clone();
            let mut b = side2.clone();
            a.parity = p1;
            b.parity = p2;
            let sides = order_sides(a, b);
            let letters: String = sides
                .iter()
                .filter_map(|s| s.parity)
                .map(|p| match p {
                    Parity::Even => 'A',
                    Parity::Odd => 'B',
                })
                .collect();
            let prefix = if letters.is_empty() { "E".to_string() } else { letters };
            let label = split_label(&prefix, &sides[0]);
            BoundaryDivisorType {
                kind: BoundaryKind::EvenSplit,
                sides,
                label,
            }
        })
        .collect()
}

/// Free generators of the rational Picard group in the stable range: the
/// Hodge class, the cotangent classes, and one class per boundary type.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PicGenerators {
    pub labels: Vec<String>,
    /// Freeness is only asserted for g >= 5; smaller genus gets a caveat.
    pub low_genus_caveat: bool,
}

pub fn pic_generators(sig: &SpinSignature) -> Result<PicGenerators, SpinError> {
    let boundary = enumerate_boundary(sig)?;
    let mut labels = vec!["lambda".to_string()];
    labels.extend((1..=sig.n()).map(|i| format!("psi_{i}")));
    labels.extend(boundary.iter().map(|t| t.label.clone()));
    Ok(PicGenerators {
        labels,
        low_genus_caveat: sig.genus() < 5,
    })
}

/// Generator count 1 + n + #boundary types, with the g < 5 caveat flag.
pub fn pic_generator_count(sig: &SpinSignature) -> Result<(usize, bool), SpinError> {
    let generators = pic_generators(sig)?;
    Ok((generators.labels.len(), generators.low_genus_caveat))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(g: u32, twists: &[u8]) -> SpinSignature {
        SpinSignature::new(g, twists.to_vec()).unwrap()
    }

    #[test]
    fn emptiness_examples() {
        assert!(!sig(1, &[1]).is_nonempty());
        assert!(!sig(2, &[1]).is_nonempty());
        assert!(sig(1, &[1, 1]).is_nonempty());
    }

    #[test]
    fn degree_examples() {
        assert_eq!(sig(1, &[1, 1]).spin_degree().unwrap(), 1);
        assert_eq!(sig(2, &[]).spin_degree().unwrap(), 1);
        assert_eq!(sig(1, &[1, 1, 0]).spin_degree().unwrap(), 1);
        assert_eq!(sig(1, &[1]).spin_degree(), Err(SpinError::EmptyModuli(1)));
    }

    #[test]
    fn fiber_degree_examples() {
        assert_eq!(sig(1, &[1, 1]).fiber_degree(), 4);
        assert_eq!(sig(1, &[1, 1, 0]).fiber_degree(), 4);
        assert_eq!(sig(0, &[0, 0, 0, 0]).fiber_degree(), 1);
    }

    #[test]
    fn signature_validation() {
        assert_eq!(SpinSignature::new(1, vec![2]), Err(SpinError::BadTwist));
        assert_eq!(
            SpinSignature::new(0, vec![0, 0]),
            Err(SpinError::UnstableSignature(0, 2))
        );
    }

    #[test]
    fn boundary_of_s12_11() {
        let types = enumerate_boundary(&sig(1, &[1, 1])).unwrap();
        let labels: Vec<&str> = types.iter().map(|t| t.label.as_str()).collect();
        assert_eq!(labels, ["A_irr", "B_irr", "A_{1,{}}", "B_{1,{}}"]);

        // A_irr: 4-pointed rational curve with O(P), ordinary node
        assert_eq!(types[0].kind, BoundaryKind::AIrr);
        assert_eq!(types[0].node_mode(), NodeMode::Ordinary);
        assert_eq!(types[0].sides[0].member_description(), "the line bundle O(P)");
        // B_irr: 4-pointed rational curve with O, exceptional node
        assert_eq!(types[1].sides[0].member_description(), "the line bundle O");
        assert_eq!(types[1].node_mode(), NodeMode::Exceptional);
        // A_{1,{}}: elliptic tail with an even root, rational side with O
        assert_eq!(types[2].sides[0].member_description(), "an even square root of O");
        assert_eq!(types[2].sides[1].member_description(), "the line bundle O");
        // B_{1,{}}: elliptic tail with O itself
        assert_eq!(types[3].sides[0].member_description(), "the line bundle O");
        assert_eq!(types[3].sides[0].parity, Some(Parity::Odd));
    }

    #[test]
    fn boundary_of_s13_110() {
        let types = enumerate_boundary(&sig(1, &[1, 1, 0])).unwrap();
        let labels: Vec<&str> = types.iter().map(|t| t.label.as_str()).collect();
        assert_eq!(
            labels,
            [
                "A_irr",
                "B_irr",
                "A_{1,{}}",
                "B_{1,{}}",
                "Delta_{1,{1}}",
                "Delta_{1,{2}}",
                "A_{1,{3}}",
                "B_{1,{3}}"
            ]
        );
        // the Delta sides carry square roots of O(p_i + node)
        assert_eq!(
            types[4].sides[0].member_description(),
            "a square root of O(p1 + node)"
        );
        assert_eq!(types[4].node_mode(), NodeMode::Ordinary);
        assert_eq!(types[4].sides[1].member_description(), "the line bundle O");
        assert_eq!(
            types[5].sides[0].member_description(),
            "a square root of O(p2 + node)"
        );
        // A_{1,{3}} / B_{1,{3}}: 2-pointed elliptic tail, parity refined
        assert_eq!(types[6].sides[0].member_description(), "an even square root of O");
        assert_eq!(types[7].sides[0].member_description(), "the line bundle O");
        assert_eq!(types[6].sides[0].markings, vec![3]);
    }

    #[test]
    fn boundary_of_s2() {
        // two irreducible types plus the three parity classes of the
        // (1|1)-split, with the mixed assignment merged
        let types = enumerate_boundary(&sig(2, &[])).unwrap();
        let labels: Vec<&str> = types.iter().map(|t| t.label.as_str()).collect();
        assert_eq!(labels, ["A_irr", "B_irr", "AA_{1,{}}", "AB_{1,{}}", "BB_{1,{}}"]);
    }

    #[test]
    fn boundary_of_s21_0() {
        // the (1,{})|(1,{1}) sides differ in marking data, so all four
        // parity assignments stay distinct
        let types = enumerate_boundary(&sig(2, &[0])).unwrap();
        let labels: Vec<&str> = types.iter().map(|t| t.label.as_str()).collect();
        assert_eq!(
            labels,
            ["A_irr", "B_irr", "AA_{1,{}}", "AB_{1,{}}", "BA_{1,{}}", "BB_{1,{}}"]
        );
    }

    #[test]
    fn boundary_of_genus_zero() {
        // rational spin spaces are the moduli of curves themselves; the
        // three pair splits each give one exceptional class
        let types = enumerate_boundary(&sig(0, &[0, 0, 0, 0])).unwrap();
        let labels: Vec<&str> = types.iter().map(|t| t.label.as_str()).collect();
        assert_eq!(labels, ["E_{0,{1,2}}", "E_{0,{1,3}}", "E_{0,{1,4}}"]);
    }

    #[test]
    fn boundary_errors() {
        assert_eq!(
            enumerate_boundary(&sig(1, &[1])),
            Err(SpinError::EmptyModuli(1))
        );
        assert_eq!(
            enumerate_boundary(&sig(2, &[1, 1, 1, 1, 1, 1])),
            Err(SpinError::OutOfWindow(2, 6, 2, 5))
        );
    }

    #[test]
    fn emitted_types_satisfy_side_invariants() {
        for (g, n) in [(0u32, 3u32), (0, 4), (0, 5), (1, 1), (1, 2), (1, 3), (2, 0), (2, 1), (2, 2)] {
            for twist_bits in 0..(1u32 << n) {
                let twists: Vec<u8> = (0..n).map(|i| ((twist_bits >> i) & 1) as u8).collect();
                let Ok(signature) = SpinSignature::new(g, twists) else {
                    continue;
                };
                if !signature.is_nonempty() {
                    continue;
                }
                for t in enumerate_boundary(&signature).unwrap() {
                    t.validate().unwrap();
                    // Delta iff odd side twist, carried by node twist 1
                    match t.kind {
                        BoundaryKind::Delta => {
                            assert!(t.sides.iter().all(|s| s.node_twists == vec![1]))
                        }
                        BoundaryKind::EvenSplit => {
                            assert!(t.sides.iter().all(|s| s.node_twists == vec![0]))
                        }
                        BoundaryKind::AIrr => assert_eq!(t.sides[0].node_twists, vec![1, 1]),
                        BoundaryKind::BIrr => assert_eq!(t.sides[0].node_twists, vec![0, 0]),
                    }
                }
            }
        }
    }

    /// Second, independent implementation of the counting rule, written
    /// directly from the split arithmetic without building divisor types.
    fn boundary_count_first_principles(signature: &SpinSignature) -> usize {
        let g = signature.genus();
        let n = signature.n();
        let mut count = if g >= 1 { 2 } else { 0 };
        for (g1, s1) in stable_splits(g, n) {
            let g2 = g - g1;
            let s2: Vec<u32> = (1..=n).filter(|l| !s1.contains(l)).collect();
            let t1: u32 = s1.iter().map(|&l| u32::from(signature.twists()[(l - 1) as usize])).sum();
            if t1 % 2 == 1 {
                count += 1;
                continue;
            }
            let zero_twist = |s: &[u32]| {
                s.iter().all(|&l| signature.twists()[(l - 1) as usize] == 0)
            };
            let q1 = g1 > 0 && zero_twist(&s1);
            let q2 = g2 > 0 && zero_twist(&s2);
            let choices = |q: bool| if q { 2 } else { 1 };
            if g1 == g2 && s1.is_empty() && s2.is_empty() && q1 && q2 {
                count += 3; // unordered pairs of two parities
            } else {
                count += choices(q1) * choices(q2);
            }
        }
        count
    }

    #[test]
    fn counts_match_independent_rederivation() {
        for g in 0..=2u32 {
            for n in 0..=5u32 {
                for twist_bits in 0..(1u32 << n) {
                    let twists: Vec<u8> = (0..n).map(|i| ((twist_bits >> i) & 1) as u8).collect();
                    let Ok(signature) = SpinSignature::new(g, twists) else {
                        continue;
                    };
                    if !signature.is_nonempty() {
                        continue;
                    }
                    assert_eq!(
                        enumerate_boundary(&signature).unwrap().len(),
                        boundary_count_first_principles(&signature),
                        "signature {signature}"
                    );
                }
            }
        }
    }

    #[test]
    fn pic_generator_counts() {
        assert_eq!(pic_generator_count(&sig(1, &[1, 1])).unwrap(), (7, true));
        assert_eq!(pic_generator_count(&sig(1, &[1, 1, 0])).unwrap(), (12, true));
        assert_eq!(pic_generator_count(&sig(0, &[0, 0, 0, 0])).unwrap(), (8, true));
    }

    #[test]
    fn pic_labels_are_distinct() {
        for signature in [sig(1, &[1, 1]), sig(1, &[1, 1, 0]), sig(2, &[]), sig(0, &[0, 0, 0, 0])] {
            let generators = pic_generators(&signature).unwrap();
            let mut labels = generators.labels.clone();
            labels.sort();
            labels.dedup();
            assert_eq!(labels.len(), generators.labels.len());
            assert_eq!(
                generators.labels.len(),
                1 + signature.n() as usize + enumerate_boundary(&signature).unwrap().len()
            );
        }
    }

    #[test]
    fn records_have_stable_shape() {
        let types = enumerate_boundary(&sig(1, &[1, 1, 0])).unwrap();
        let record = types[4].to_record();
        assert_eq!(
            record,
            "Delta_{1,{1}} kind=Delta split=(1,{1}) node=ordinary parity=(-|-) \
             sides=(g=1,S={1},m=(1),node=(1)) (g=0,S={2,3},m=(1,0),node=(1))"
        );
        let record = types[0].to_record();
        assert_eq!(
            record,
            "A_irr kind=A_irr node=ordinary parity=(-) sides=(g=0,S={1,2,3},m=(1,1,0),node=(1,1))"
        );
    }
}
