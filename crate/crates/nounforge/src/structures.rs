//! Binary parse trees and modificational structures over compound positions.
//!
//! A compound of `n` words has `Catalan(n-1)` binary parses. Each parse maps
//! to a modificational structure: a directed tree over positions `1..=n` in
//! which every non-final word modifies a unique word to its right and the
//! final word is the root. The mapping is a bijection, so choosing a
//! structure determines the parse. This module represents both sides,
//! enumerates them in a canonical order, and computes the generator-freedom
//! measure [`ModStructure::choice`] that the scorer divides by.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructureError {
    #[error("word count must be at least 1")]
    EmptyCompound,
    #[error("position {position}: parent {parent} is not strictly to the right")]
    ParentNotRightward { position: usize, parent: usize },
    #[error("position {position}: parent {parent} out of range 1..={n}")]
    ParentOutOfRange { position: usize, parent: usize, n: usize },
    #[error("position {position} assigned more than one parent")]
    DuplicateParent { position: usize },
    #[error("position {position} has no parent and is not the root")]
    MissingParent { position: usize },
    #[error("subtree of position {position} does not cover a contiguous span")]
    NonContiguousSubtree { position: usize },
    #[error("expected {expected} words, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("bracket syntax error at byte {offset}: {message}")]
    BracketSyntax { offset: usize, message: String },
}

/// An ordered binary tree over word positions `1..=n`.
///
/// The left-to-right sequence of leaves of a valid parse is exactly
/// `1, 2, ..., n`. Values produced by this module always satisfy that; the
/// bracket-text parser assigns positions in reading order so it cannot
/// produce anything else.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BinaryParse {
    Leaf(usize),
    Node(Box<BinaryParse>, Box<BinaryParse>),
}

impl BinaryParse {
    pub fn leaf(position: usize) -> Self {
        BinaryParse::Leaf(position)
    }

    pub fn node(left: BinaryParse, right: BinaryParse) -> Self {
        BinaryParse::Node(Box::new(left), Box::new(right))
    }

    /// Number of words spanned, assuming a valid parse over `1..=n`.
    pub fn word_count(&self) -> usize {
        self.rightmost_leaf()
    }

    pub fn leftmost_leaf(&self) -> usize {
        match self {
            BinaryParse::Leaf(p) => *p,
            BinaryParse::Node(l, _) => l.leftmost_leaf(),
        }
    }

    pub fn rightmost_leaf(&self) -> usize {
        match self {
            BinaryParse::Leaf(p) => *p,
            BinaryParse::Node(_, r) => r.rightmost_leaf(),
        }
    }

    /// Leaf positions in left-to-right order.
    pub fn leaf_positions(&self) -> Vec<usize> {
        fn walk(p: &BinaryParse, out: &mut Vec<usize>) {
            match p {
                BinaryParse::Leaf(pos) => out.push(*pos),
                BinaryParse::Node(l, r) => {
                    walk(l, out);
                    walk(r, out);
                }
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out
    }

    /// True when every right child is a leaf, e.g. `(((1 2) 3) 4)`.
    pub fn is_left_branching(&self) -> bool {
        match self {
            BinaryParse::Leaf(_) => true,
            BinaryParse::Node(l, r) => matches!(**r, BinaryParse::Leaf(_)) && l.is_left_branching(),
        }
    }

    /// The fully left-branching parse over `1..=n`.
    pub fn left_branching(n: usize) -> Result<Self, StructureError> {
        if n == 0 {
            return Err(StructureError::EmptyCompound);
        }
        let mut parse = BinaryParse::leaf(1);
        for position in 2..=n {
            parse = BinaryParse::node(parse, BinaryParse::leaf(position));
        }
        Ok(parse)
    }

    /// Derives the modificational structure: at each interior node the
    /// rightmost leaf of the left child modifies the rightmost leaf of the
    /// right child.
    pub fn to_structure(&self) -> ModStructure {
        fn collect(p: &BinaryParse, links: &mut Vec<(usize, usize)>) {
            if let BinaryParse::Node(l, r) = p {
                links.push((l.rightmost_leaf(), r.rightmost_leaf()));
                collect(l, links);
                collect(r, links);
            }
        }
        let mut links = Vec::new();
        collect(self, &mut links);
        ModStructure::new(self.word_count(), links)
            .expect("a binary parse always yields a valid structure")
    }

    /// Renders canonical bracket text: one parenthesis pair per interior
    /// node, single spaces between siblings. `words[i]` names position `i+1`.
    pub fn bracket_text<S: AsRef<str>>(&self, words: &[S]) -> Result<String, StructureError> {
        if words.len() != self.word_count() {
            return Err(StructureError::LengthMismatch {
                expected: self.word_count(),
                got: words.len(),
            });
        }
        fn render<S: AsRef<str>>(p: &BinaryParse, words: &[S], out: &mut String) {
            match p {
                BinaryParse::Leaf(pos) => out.push_str(words[*pos - 1].as_ref()),
                BinaryParse::Node(l, r) => {
                    out.push('(');
                    render(l, words, out);
                    out.push(' ');
                    render(r, words, out);
                    out.push(')');
                }
            }
        }
        let mut out = String::new();
        render(self, words, &mut out);
        Ok(out)
    }
}

/// A directed modification tree over positions `1..=n`, rooted at `n`.
///
/// Construction validates eagerly: parents point strictly rightward, every
/// non-root position has exactly one parent, and every subtree covers a
/// contiguous position interval ending at its own position. All downstream
/// formulas assume these invariants.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModStructure {
    n: usize,
    /// parent[i-1] is the parent of position i, for i in 1..n.
    parent: Vec<usize>,
    /// children[j-1] are the positions whose parent is j, ascending.
    children: Vec<Vec<usize>>,
}

impl ModStructure {
    /// Builds a structure from `(position, parent)` links. Every position in
    /// `1..n` must appear exactly once; `n` is the root and takes no link.
    pub fn new(
        n: usize,
        links: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, StructureError> {
        if n == 0 {
            return Err(StructureError::EmptyCompound);
        }
        let mut parent = vec![0usize; n.saturating_sub(1)];
        for (position, par) in links {
            if position == 0 || position >= n || par > n {
                return Err(StructureError::ParentOutOfRange {
                    position,
                    parent: par,
                    n,
                });
            }
            if par <= position {
                return Err(StructureError::ParentNotRightward {
                    position,
                    parent: par,
                });
            }
            if parent[position - 1] != 0 {
                return Err(StructureError::DuplicateParent { position });
            }
            parent[position - 1] = par;
        }
        if let Some(position) = parent.iter().position(|&p| p == 0) {
            return Err(StructureError::MissingParent {
                position: position + 1,
            });
        }
        let mut children = vec![Vec::new(); n];
        for (i, &par) in parent.iter().enumerate() {
            children[par - 1].push(i + 1);
        }
        // parents are recorded in position order, so child lists are ascending
        let structure = ModStructure {
            n,
            parent,
            children,
        };
        structure.check_intervals()?;
        Ok(structure)
    }

    /// Every subtree must be a contiguous run of positions whose maximum is
    /// the subtree root.
    fn check_intervals(&self) -> Result<(), StructureError> {
        for j in 1..=self.n {
            let mut span = Vec::new();
            self.collect_subtree(j, &mut span);
            let lo = *span.iter().min().expect("subtree contains its root");
            if span.len() != j - lo + 1 {
                return Err(StructureError::NonContiguousSubtree { position: j });
            }
        }
        Ok(())
    }

    fn collect_subtree(&self, j: usize, out: &mut Vec<usize>) {
        out.push(j);
        for &c in &self.children[j - 1] {
            self.collect_subtree(c, out);
        }
    }

    pub fn word_count(&self) -> usize {
        self.n
    }

    pub fn root(&self) -> usize {
        self.n
    }

    /// Parent of `position`, or `None` for the root.
    pub fn parent(&self, position: usize) -> Option<usize> {
        if position == self.n {
            None
        } else {
            Some(self.parent[position - 1])
        }
    }

    /// Children of `position`, ascending.
    pub fn children(&self, position: usize) -> &[usize] {
        &self.children[position - 1]
    }

    /// The `n-1` modification links as `(modifier, head)`, by modifier.
    pub fn links(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parent
            .iter()
            .enumerate()
            .map(|(i, &p)| (i + 1, p))
    }

    /// True for the chain `1 -> 2 -> ... -> n`.
    pub fn is_chain(&self) -> bool {
        self.parent.iter().enumerate().all(|(i, &p)| p == i + 2)
    }

    /// Degree of freedom available to a generator emitting this structure:
    /// the product over nodes with children of their child counts. The
    /// empty product makes single-word structures and chains score 1.
    pub fn choice(&self) -> u64 {
        self.children
            .iter()
            .filter(|c| !c.is_empty())
            .map(|c| c.len() as u64)
            .product()
    }

    /// Reconstructs the unique binary parse this structure came from.
    ///
    /// Child subtrees tile the interval left of each node, so the parse is
    /// forced: fold the ordered child parses onto the node's leaf from the
    /// right.
    pub fn to_parse(&self) -> BinaryParse {
        self.build_parse(self.n)
    }

    fn build_parse(&self, j: usize) -> BinaryParse {
        let mut parse = BinaryParse::leaf(j);
        for &c in self.children[j - 1].iter().rev() {
            parse = BinaryParse::node(self.build_parse(c), parse);
        }
        parse
    }

    /// All distinct position sequences a postorder traversal can emit: each
    /// node after all its descendants, each subtree contiguous.
    ///
    /// For nodes with three or more children the count of such sequences
    /// (the product of child-count factorials) exceeds the child-count
    /// product returned by [`choice`](Self::choice); the scorer divides by
    /// `choice`, this enumeration is the independent count of realizable
    /// orderings.
    pub fn generable_strings(&self) -> BTreeSet<Vec<usize>> {
        fn sequences(m: &ModStructure, j: usize) -> Vec<Vec<usize>> {
            let children = m.children(j);
            if children.is_empty() {
                return vec![vec![j]];
            }
            let per_child: Vec<Vec<Vec<usize>>> =
                children.iter().map(|&c| sequences(m, c)).collect();
            let mut out = Vec::new();
            let mut order: Vec<usize> = (0..children.len()).collect();
            permute(&mut order, 0, &mut |order| {
                let mut picks = vec![0usize; order.len()];
                loop {
                    let mut seq = Vec::new();
                    for (slot, &child_idx) in order.iter().enumerate() {
                        seq.extend_from_slice(&per_child[child_idx][picks[slot]]);
                    }
                    seq.push(j);
                    out.push(seq);
                    // odometer over each child's alternative sequences
                    let mut slot = 0;
                    loop {
                        if slot == order.len() {
                            return;
                        }
                        picks[slot] += 1;
                        if picks[slot] < per_child[order[slot]].len() {
                            break;
                        }
                        picks[slot] = 0;
                        slot += 1;
                    }
                }
            });
            out
        }
        sequences(self, self.n).into_iter().collect()
    }
}

fn permute(items: &mut [usize], k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, visit);
        items.swap(k, i);
    }
}

/// All binary parses over `1..=n` in canonical order: at every span the
/// split with the largest left subtree comes first, recursively. The fully
/// left-branching parse is therefore first and the fully right-branching
/// parse last.
pub fn enumerate_parses(n: usize) -> Result<Vec<BinaryParse>, StructureError> {
    if n == 0 {
        return Err(StructureError::EmptyCompound);
    }
    fn span_parses(lo: usize, hi: usize) -> Vec<BinaryParse> {
        if lo == hi {
            return vec![BinaryParse::leaf(lo)];
        }
        let mut out = Vec::new();
        for split in (lo..hi).rev() {
            for left in span_parses(lo, split) {
                for right in span_parses(split + 1, hi) {
                    out.push(BinaryParse::node(left.clone(), right));
                }
            }
        }
        out
    }
    Ok(span_parses(1, n))
}

/// The image of [`enumerate_parses`] under [`BinaryParse::to_structure`],
/// in the same order. The mapping is injective, so the list has
/// `Catalan(n-1)` distinct entries.
pub fn enumerate_structures(n: usize) -> Result<Vec<ModStructure>, StructureError> {
    Ok(enumerate_parses(n)?
        .iter()
        .map(BinaryParse::to_structure)
        .collect())
}

/// Parses canonical bracket text (`expr := word | "(" expr " " expr ")"`)
/// into a parse tree plus the words in reading order. Words are any run of
/// characters other than parentheses and whitespace.
pub fn parse_bracket_text(text: &str) -> Result<(BinaryParse, Vec<String>), StructureError> {
    let bytes = text.as_bytes();
    let mut words = Vec::new();
    let mut offset = 0usize;
    let parse = parse_expr(bytes, &mut offset, &mut words)?;
    if offset != bytes.len() {
        return Err(StructureError::BracketSyntax {
            offset,
            message: "trailing input after expression".into(),
        });
    }
    Ok((parse, words))
}

fn parse_expr(
    bytes: &[u8],
    offset: &mut usize,
    words: &mut Vec<String>,
) -> Result<BinaryParse, StructureError> {
    match bytes.get(*offset) {
        Some(b'(') => {
            *offset += 1;
            let left = parse_expr(bytes, offset, words)?;
            expect_byte(bytes, offset, b' ')?;
            let right = parse_expr(bytes, offset, words)?;
            expect_byte(bytes, offset, b')')?;
            Ok(BinaryParse::node(left, right))
        }
        Some(_) => {
            let start = *offset;
            while let Some(&b) = bytes.get(*offset) {
                if b == b'(' || b == b')' || (b as char).is_whitespace() {
                    break;
                }
                *offset += 1;
            }
            if *offset == start {
                return Err(StructureError::BracketSyntax {
                    offset: start,
                    message: "expected a word".into(),
                });
            }
            let word = std::str::from_utf8(&bytes[start..*offset])
                .map_err(|_| StructureError::BracketSyntax {
                    offset: start,
                    message: "invalid UTF-8 in word".into(),
                })?
                .to_string();
            words.push(word);
            Ok(BinaryParse::leaf(words.len()))
        }
        None => Err(StructureError::BracketSyntax {
            offset: *offset,
            message: "unexpected end of input".into(),
        }),
    }
}

fn expect_byte(bytes: &[u8], offset: &mut usize, expected: u8) -> Result<(), StructureError> {
    if bytes.get(*offset) == Some(&expected) {
        *offset += 1;
        Ok(())
    } else {
        let mut message = String::new();
        let _ = write!(message, "expected {:?}", expected as char);
        Err(StructureError::BracketSyntax {
            offset: *offset,
            message,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Independent Catalan counter: C(k) = sum C(i) C(k-1-i).
    fn catalan(k: usize) -> u64 {
        if k == 0 {
            return 1;
        }
        (0..k).map(|i| catalan(i) * catalan(k - 1 - i)).sum()
    }

    fn chain(n: usize) -> ModStructure {
        ModStructure::new(n, (1..n).map(|i| (i, i + 1))).unwrap()
    }

    fn star(n: usize) -> ModStructure {
        ModStructure::new(n, (1..n).map(|i| (i, n))).unwrap()
    }

    #[test]
    fn enumeration_counts_match_catalan() {
        for n in 1..=7 {
            let parses = enumerate_parses(n).unwrap();
            let structures = enumerate_structures(n).unwrap();
            assert_eq!(parses.len() as u64, catalan(n - 1), "n={n}");
            assert_eq!(structures.len(), parses.len(), "n={n}");
        }
    }

    #[test]
    fn enumerate_rejects_zero() {
        assert!(enumerate_parses(0).is_err());
        assert!(enumerate_structures(0).is_err());
    }

    #[test]
    fn three_word_parses_in_canonical_order() {
        let parses = enumerate_parses(3).unwrap();
        let left = BinaryParse::node(
            BinaryParse::node(BinaryParse::leaf(1), BinaryParse::leaf(2)),
            BinaryParse::leaf(3),
        );
        let right = BinaryParse::node(
            BinaryParse::leaf(1),
            BinaryParse::node(BinaryParse::leaf(2), BinaryParse::leaf(3)),
        );
        assert_eq!(parses, vec![left, right]);
    }

    #[test]
    fn first_enumerated_parse_is_fully_left_branching() {
        for n in 1..=7 {
            let parses = enumerate_parses(n).unwrap();
            assert!(parses[0].is_left_branching(), "n={n}");
            assert_eq!(parses[0], BinaryParse::left_branching(n).unwrap());
        }
    }

    #[test]
    fn five_word_count_frozen() {
        // Catalan(4) computed by the independent counter.
        assert_eq!(catalan(4), 14);
        assert_eq!(enumerate_parses(5).unwrap().len(), 14);
    }

    #[test]
    fn six_word_structures_frozen() {
        assert_eq!(catalan(5), 42);
        assert_eq!(enumerate_structures(6).unwrap().len(), 42);
    }

    #[test]
    fn parse_to_structure_examples() {
        let parses = enumerate_parses(3).unwrap();
        let chain3 = parses[0].to_structure();
        assert_eq!(chain3.parent(1), Some(2));
        assert_eq!(chain3.parent(2), Some(3));
        let star3 = parses[1].to_structure();
        assert_eq!(star3.parent(1), Some(3));
        assert_eq!(star3.parent(2), Some(3));

        // (1 ((2 3) 4)): rightmost-leaf rule at each interior node
        let p = BinaryParse::node(
            BinaryParse::leaf(1),
            BinaryParse::node(
                BinaryParse::node(BinaryParse::leaf(2), BinaryParse::leaf(3)),
                BinaryParse::leaf(4),
            ),
        );
        let m = p.to_structure();
        assert_eq!(m.parent(1), Some(4));
        assert_eq!(m.parent(2), Some(3));
        assert_eq!(m.parent(3), Some(4));
    }

    #[test]
    fn structure_to_parse_examples() {
        assert_eq!(chain(3).to_parse(), enumerate_parses(3).unwrap()[0]);
        assert_eq!(star(3).to_parse(), enumerate_parses(3).unwrap()[1]);
    }

    #[test]
    fn bijection_roundtrip_exhaustive() {
        for n in 1..=7 {
            let parses = enumerate_parses(n).unwrap();
            let mut seen = BTreeSet::new();
            for p in &parses {
                let m = p.to_structure();
                assert_eq!(&m.to_parse(), p, "round trip failed for n={n}");
                assert!(
                    seen.insert(format!("{:?}", m)),
                    "structure map not injective for n={n}"
                );
            }
        }
    }

    #[test]
    fn structure_validation_rejects_bad_input() {
        // parent not rightward
        assert!(matches!(
            ModStructure::new(3, [(1, 1), (2, 3)]),
            Err(StructureError::ParentNotRightward { .. })
        ));
        // out of range
        assert!(matches!(
            ModStructure::new(3, [(1, 4), (2, 3)]),
            Err(StructureError::ParentOutOfRange { .. })
        ));
        // crossing links break the interval property
        assert!(matches!(
            ModStructure::new(4, [(1, 3), (2, 4), (3, 4)]),
            Err(StructureError::NonContiguousSubtree { .. })
        ));
        // missing and duplicate parents
        assert!(matches!(
            ModStructure::new(3, [(1, 3)]),
            Err(StructureError::MissingParent { .. })
        ));
        assert!(matches!(
            ModStructure::new(3, [(1, 2), (1, 3), (2, 3)]),
            Err(StructureError::DuplicateParent { .. })
        ));
        assert!(ModStructure::new(0, []).is_err());
    }

    #[test]
    fn single_word_structure() {
        let m = ModStructure::new(1, []).unwrap();
        assert_eq!(m.root(), 1);
        assert_eq!(m.parent(1), None);
        assert_eq!(m.choice(), 1);
        assert_eq!(m.generable_strings().len(), 1);
        assert_eq!(m.to_parse(), BinaryParse::leaf(1));
    }

    #[test]
    fn choice_examples() {
        for n in 2..=7 {
            assert_eq!(chain(n).choice(), 1, "chain n={n}");
        }
        assert_eq!(star(3).choice(), 2);
        // all-modify-last with three children at the root
        assert_eq!(star(4).choice(), 3);
    }

    #[test]
    fn generable_strings_examples() {
        let chain3: Vec<Vec<usize>> = chain(3).generable_strings().into_iter().collect();
        assert_eq!(chain3, vec![vec![1, 2, 3]]);

        let star3: Vec<Vec<usize>> = star(3).generable_strings().into_iter().collect();
        assert_eq!(star3, vec![vec![1, 2, 3], vec![2, 1, 3]]);
        assert_eq!(star3.len() as u64, star(3).choice());

        // a 3-child node yields 3! orderings while choice is 3
        let star4 = star(4).generable_strings();
        assert_eq!(star4.len(), 6);
        assert_eq!(star(4).choice(), 3);
    }

    #[test]
    fn generable_strings_match_choice_for_binary_children() {
        for n in 1..=6 {
            for m in enumerate_structures(n).unwrap() {
                if (1..=n).all(|j| m.children(j).len() <= 2) {
                    assert_eq!(
                        m.generable_strings().len() as u64,
                        m.choice(),
                        "n={n} m={m:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn generable_strings_respect_parent_after_child() {
        for n in 1..=6 {
            for m in enumerate_structures(n).unwrap() {
                let strings = m.generable_strings();
                // the identity ordering is always realizable for enumerated structures
                assert!(strings.contains(&(1..=n).collect::<Vec<_>>()), "n={n}");
                for seq in strings {
                    let index_of = |x: usize| seq.iter().position(|&y| y == x).unwrap();
                    for (child, parent) in m.links() {
                        assert!(index_of(child) < index_of(parent), "n={n} seq={seq:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn choice_one_iff_chain_iff_left_branching() {
        for n in 1..=6 {
            for m in enumerate_structures(n).unwrap() {
                let is_chain = m.is_chain() || n == 1;
                assert_eq!(m.choice() == 1, is_chain, "n={n}");
                assert_eq!(m.to_parse().is_left_branching(), is_chain, "n={n}");
            }
        }
    }

    #[test]
    fn bracket_text_examples() {
        let words = ["pottery", "coffee", "mug"];
        let parses = enumerate_parses(3).unwrap();
        assert_eq!(
            parses[0].bracket_text(&words).unwrap(),
            "((pottery coffee) mug)"
        );
        assert_eq!(
            parses[1].bracket_text(&words).unwrap(),
            "(pottery (coffee mug))"
        );
        assert_eq!(BinaryParse::leaf(1).bracket_text(&["mug"]).unwrap(), "mug");
        assert!(matches!(
            parses[0].bracket_text(&["a", "b"]),
            Err(StructureError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn bracket_parsing_accepts_canonical_text() {
        let (parse, words) = parse_bracket_text("((pottery coffee) mug)").unwrap();
        assert_eq!(words, vec!["pottery", "coffee", "mug"]);
        assert_eq!(parse, enumerate_parses(3).unwrap()[0]);

        let (leaf, words) = parse_bracket_text("mug").unwrap();
        assert_eq!(leaf, BinaryParse::leaf(1));
        assert_eq!(words, vec!["mug"]);
    }

    #[test]
    fn bracket_parsing_rejects_malformed_text() {
        for bad in [
            "",
            "(a b",
            "(a  b)",
            "(a b))",
            "a b",
            "(a (b c) d)",
            "()",
            "( a b)",
        ] {
            assert!(
                matches!(
                    parse_bracket_text(bad),
                    Err(StructureError::BracketSyntax { .. })
                ),
                "expected syntax error for {bad:?}"
            );
        }
    }

    proptest! {
        #[test]
        fn parse_structure_roundtrip(n in 1usize..=7, index in 0usize..429) {
            let parses = enumerate_parses(n).unwrap();
            let p = &parses[index % parses.len()];
            prop_assert_eq!(&p.to_structure().to_parse(), p);
        }

        #[test]
        fn bracket_text_roundtrip(n in 1usize..=6, index in 0usize..132) {
            let parses = enumerate_parses(n).unwrap();
            let p = &parses[index % parses.len()];
            let words: Vec<String> = (1..=n).map(|i| format!("w{i}")).collect();
            let text = p.bracket_text(&words).unwrap();
            let (reparsed, rewords) = parse_bracket_text(&text).unwrap();
            prop_assert_eq!(&reparsed, p);
            prop_assert_eq!(rewords, words);
        }
    }
}
