//! Corpus pair counts and the trained category-association table.
//!
//! Training spreads each observed two-word compound count over the
//! categories of its words (discounted by ambiguity), then normalizes per
//! head category so that the modifier distribution of every head sums to
//! one. An additive epsilon keeps unseen associations off zero, which the
//! multiplicative structure score cannot tolerate.

use std::collections::BTreeMap;
use std::io::{self, BufRead, Write};
use std::sync::Arc;

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::lexicon::{CatId, LexiconError, Thesaurus, Word};

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("model header malformed: {0}")]
    Header(String),
    #[error("model was trained on a different thesaurus (model digest {model}, thesaurus digest {thesaurus})")]
    DigestMismatch { model: String, thesaurus: String },
    #[error("unknown category {0:?}")]
    UnknownCategory(String),
    #[error("epsilon must be a positive finite number, got {0}")]
    InvalidEpsilon(f64),
    #[error("cannot train on an empty class system")]
    EmptyClassSystem,
    #[error(transparent)]
    Lexicon(#[from] LexiconError),
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Sparse counts of two-word compounds. Zero entries are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PairCounts {
    counts: BTreeMap<(Word, Word), u64>,
    total: u64,
}

impl PairCounts {
    pub fn new() -> Self {
        Self::default()
    }

    /// Parses pair-count lines `<word1><TAB><word2><TAB><count>`.
    /// Duplicate keys sum; `#` comments and blank lines are ignored.
    pub fn ingest(reader: impl BufRead) -> Result<Self, ModelError> {
        let mut counts = PairCounts::new();
        for (index, line) in reader.lines().enumerate() {
            let line = line?;
            let number = index + 1;
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            let [w1, w2, count] = fields[..] else {
                return Err(ModelError::Parse {
                    line: number,
                    message: format!("expected 3 tab-separated fields: {line:?}"),
                });
            };
            let parse_word = |w: &str| {
                Word::new(w).map_err(|e| ModelError::Parse {
                    line: number,
                    message: e.to_string(),
                })
            };
            let count: u64 = count.parse().map_err(|_| ModelError::Parse {
                line: number,
                message: format!("count must be a nonnegative integer, got {count:?}"),
            })?;
            counts.add(parse_word(w1)?, parse_word(w2)?, count);
        }
        Ok(counts)
    }

    pub fn add(&mut self, w1: Word, w2: Word, count: u64) {
        if count == 0 {
            return;
        }
        *self.counts.entry((w1, w2)).or_insert(0) += count;
        self.total += count;
    }

    pub fn get(&self, w1: &Word, w2: &Word) -> u64 {
        self.counts
            .get(&(w1.clone(), w2.clone()))
            .copied()
            .unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn distinct_pairs(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(Word, Word), u64)> {
        self.counts.iter().map(|(k, &v)| (k, v))
    }

    /// Sums another count table into this one. Merging is associative and
    /// commutative, so disjoint corpus shards can be counted independently.
    pub fn merge(&mut self, other: PairCounts) {
        for ((w1, w2), count) in other.counts {
            *self.counts.entry((w1, w2)).or_insert(0) += count;
            self.total += count;
        }
    }

    /// Canonical serialization, one `w1<TAB>w2<TAB>count` line per entry in
    /// key order.
    pub fn dump_string(&self) -> String {
        let mut out = String::new();
        for ((w1, w2), count) in &self.counts {
            out.push_str(w1.as_str());
            out.push('\t');
            out.push_str(w2.as_str());
            out.push('\t');
            out.push_str(&count.to_string());
            out.push('\n');
        }
        out
    }

    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(self.dump_string().as_bytes()))
    }
}

/// Counts each maximal run of in-thesaurus tokens of length exactly two as
/// one pair occurrence. Longer runs are ambiguous compounds and shorter
/// ones are not compounds, so both contribute nothing.
pub fn extract_pairs<I, S>(tokens: I, thesaurus: &Thesaurus) -> PairCounts
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    let mut counts = PairCounts::new();
    let mut run: Vec<Word> = Vec::new();
    let mut flush = |run: &mut Vec<Word>, counts: &mut PairCounts| {
        if let [w1, w2] = &run[..] {
            counts.add(w1.clone(), w2.clone(), 1);
        }
        run.clear();
    };
    for token in tokens {
        let known = Word::new(token.as_ref())
            .ok()
            .filter(|w| !thesaurus.cats(w).is_empty());
        match known {
            Some(word) => run.push(word),
            None => flush(&mut run, &mut counts),
        }
    }
    flush(&mut run, &mut counts);
    counts
}

/// The affinity mass flowing from category `s1` to category `s2`: each pair
/// count is divided by both words' ambiguities and summed over the member
/// cross product, so the total mass over all category pairs equals the
/// total count of fully-known pairs.
pub fn raw_affinity(
    counts: &PairCounts,
    thesaurus: &Thesaurus,
    s1: &str,
    s2: &str,
) -> Result<f64, ModelError> {
    let modifier = thesaurus
        .category_id(s1)
        .ok_or_else(|| ModelError::UnknownCategory(s1.to_string()))?;
    let head = thesaurus
        .category_id(s2)
        .ok_or_else(|| ModelError::UnknownCategory(s2.to_string()))?;
    let mut sum = 0.0;
    for ((w1, w2), count) in counts.iter() {
        let (Some(id1), Some(id2)) = (thesaurus.word_id(w1), thesaurus.word_id(w2)) else {
            continue;
        };
        let cats1 = thesaurus.cats_by_id(id1);
        let cats2 = thesaurus.cats_by_id(id2);
        if cats1.binary_search(&modifier).is_ok() && cats2.binary_search(&head).is_ok() {
            sum += count as f64 / (cats1.len() * cats2.len()) as f64;
        }
    }
    Ok(sum)
}

const MODEL_MAGIC: &str = "nounforge-model";
const MODEL_VERSION: &str = "v1";

/// Trained table of `P(s1 -> s2 | s2 is modified)` over category pairs.
///
/// Cells with observed affinity are stored explicitly; every absent cell of
/// a head shares that head's floor probability, reconstructed from the
/// stored cells so that the full distribution sums to one. The same
/// reconstruction runs after `train` and after `load`, which makes a
/// save/load round trip score-identical.
pub struct AssociationModel {
    thesaurus: Arc<Thesaurus>,
    epsilon: f64,
    thesaurus_digest: String,
    /// (head, modifier) -> probability, for cells with nonzero affinity.
    cells: BTreeMap<(CatId, CatId), f64>,
    /// Per-head probability of any cell not stored above.
    floors: Vec<f64>,
    metadata: String,
}

impl AssociationModel {
    /// Estimates the association table from pair counts. Pairs with either
    /// word missing from the thesaurus are skipped: they cannot be spread
    /// over categories.
    pub fn train(
        counts: &PairCounts,
        thesaurus: Arc<Thesaurus>,
        epsilon: f64,
    ) -> Result<Self, ModelError> {
        if !(epsilon.is_finite() && epsilon > 0.0) {
            return Err(ModelError::InvalidEpsilon(epsilon));
        }
        let class_count = thesaurus.class_count();
        if class_count == 0 {
            return Err(ModelError::EmptyClassSystem);
        }

        let mut raw: BTreeMap<(CatId, CatId), f64> = BTreeMap::new();
        for ((w1, w2), count) in counts.iter() {
            let (Some(id1), Some(id2)) = (thesaurus.word_id(w1), thesaurus.word_id(w2)) else {
                continue;
            };
            let cats1 = thesaurus.cats_by_id(id1);
            let cats2 = thesaurus.cats_by_id(id2);
            let share = count as f64 / (cats1.len() * cats2.len()) as f64;
            for &head in cats2 {
                for &modifier in cats1 {
                    *raw.entry((head, modifier)).or_insert(0.0) += share;
                }
            }
        }

        let mut normalizers = vec![class_count as f64 * epsilon; class_count];
        for (&(head, _), &mass) in &raw {
            normalizers[head.0 as usize] += mass;
        }
        let cells: BTreeMap<(CatId, CatId), f64> = raw
            .into_iter()
            .map(|((head, modifier), mass)| {
                ((head, modifier), (mass + epsilon) / normalizers[head.0 as usize])
            })
            .collect();

        let floors = reconstruct_floors(&cells, class_count);
        let metadata = format!(
            "trained pairs_digest={} pairs_total={} epsilon={:e}",
            counts.digest(),
            counts.total(),
            epsilon
        );
        Ok(AssociationModel {
            thesaurus_digest: thesaurus.digest(),
            thesaurus,
            epsilon,
            cells,
            floors,
            metadata,
        })
    }

    pub fn thesaurus(&self) -> &Arc<Thesaurus> {
        &self.thesaurus
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn thesaurus_digest(&self) -> &str {
        &self.thesaurus_digest
    }

    pub fn metadata(&self) -> &str {
        &self.metadata
    }

    pub fn class_count(&self) -> usize {
        self.thesaurus.class_count()
    }

    pub fn stored_cell_count(&self) -> usize {
        self.cells.len()
    }

    /// `P(modifier -> head | head is modified)`. `None` stands for a class
    /// outside the trained system (an unknown word's singleton class): as a
    /// modifier it takes the head's floor, as a head it accepts any
    /// modifier uniformly.
    pub fn link_prob(&self, modifier: Option<CatId>, head: Option<CatId>) -> f64 {
        match head {
            Some(h) => match modifier {
                Some(m) => self
                    .cells
                    .get(&(h, m))
                    .copied()
                    .unwrap_or(self.floors[h.0 as usize]),
                None => self.floors[h.0 as usize],
            },
            None => 1.0 / self.class_count() as f64,
        }
    }

    /// The full modifier distribution of `head` (stored cells plus floored
    /// absences), descending by probability, ties by category order.
    pub fn modifier_distribution(&self, head: CatId) -> Vec<(CatId, f64)> {
        let mut entries: Vec<(CatId, f64)> = self
            .thesaurus
            .category_ids()
            .map(|m| (m, self.link_prob(Some(m), Some(head))))
            .collect();
        entries.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
        entries
    }

    /// Writes the model file: a header line followed by one
    /// `<s1><TAB><s2><TAB><probability>` line per stored cell, sorted by
    /// (s2, s1). Probabilities carry 17 significant digits, enough to
    /// round-trip exactly.
    pub fn save(&self, mut sink: impl Write) -> io::Result<()> {
        writeln!(
            sink,
            "{MODEL_MAGIC} {MODEL_VERSION} epsilon={:e} thesaurus_digest={}",
            self.epsilon, self.thesaurus_digest
        )?;
        for (&(head, modifier), prob) in &self.cells {
            writeln!(
                sink,
                "{}\t{}\t{:.16e}",
                self.thesaurus.category_label(modifier),
                self.thesaurus.category_label(head),
                prob
            )?;
        }
        Ok(())
    }

    pub fn save_string(&self) -> String {
        let mut out = Vec::new();
        self.save(&mut out).expect("writing to a Vec cannot fail");
        String::from_utf8(out).expect("model file is UTF-8")
    }

    /// Reads a model file back against the thesaurus it was trained on.
    /// A digest mismatch means the class system differs and the stored
    /// labels cannot be trusted.
    pub fn load(reader: impl BufRead, thesaurus: Arc<Thesaurus>) -> Result<Self, ModelError> {
        let mut lines = reader.lines();
        let header = lines
            .next()
            .ok_or_else(|| ModelError::Header("empty model file".into()))??;
        let mut fields = header.split(' ');
        match (fields.next(), fields.next()) {
            (Some(MODEL_MAGIC), Some(MODEL_VERSION)) => {}
            _ => return Err(ModelError::Header(format!("unrecognized header {header:?}"))),
        }
        let mut epsilon: Option<f64> = None;
        let mut digest: Option<String> = None;
        for field in fields {
            if let Some(value) = field.strip_prefix("epsilon=") {
                epsilon = Some(value.parse().map_err(|_| {
                    ModelError::Header(format!("bad epsilon value {value:?}"))
                })?);
            } else if let Some(value) = field.strip_prefix("thesaurus_digest=") {
                digest = Some(value.to_string());
            } else {
                return Err(ModelError::Header(format!("unknown header field {field:?}")));
            }
        }
        let epsilon = epsilon.ok_or_else(|| ModelError::Header("missing epsilon".into()))?;
        if !(epsilon.is_finite() && epsilon > 0.0) {
            return Err(ModelError::InvalidEpsilon(epsilon));
        }
        let digest = digest.ok_or_else(|| ModelError::Header("missing thesaurus_digest".into()))?;
        let actual = thesaurus.digest();
        if digest != actual {
            return Err(ModelError::DigestMismatch {
                model: digest,
                thesaurus: actual,
            });
        }

        let mut cells = BTreeMap::new();
        for (index, line) in lines.enumerate() {
            let line = line?;
            let number = index + 2;
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            let [modifier, head, prob] = fields[..] else {
                return Err(ModelError::Parse {
                    line: number,
                    message: format!("expected 3 tab-separated fields: {line:?}"),
                });
            };
            let modifier = thesaurus
                .category_id(modifier)
                .ok_or_else(|| ModelError::UnknownCategory(modifier.to_string()))?;
            let head = thesaurus
                .category_id(head)
                .ok_or_else(|| ModelError::UnknownCategory(head.to_string()))?;
            let prob: f64 = prob.parse().map_err(|_| ModelError::Parse {
                line: number,
                message: format!("bad probability {prob:?}"),
            })?;
            if !(prob > 0.0 && prob <= 1.0) {
                return Err(ModelError::Parse {
                    line: number,
                    message: format!("probability {prob} outside (0, 1]"),
                });
            }
            if cells.insert((head, modifier), prob).is_some() {
                return Err(ModelError::Parse {
                    line: number,
                    message: "duplicate cell".into(),
                });
            }
        }
        let floors = reconstruct_floors(&cells, thesaurus.class_count());
        Ok(AssociationModel {
            thesaurus_digest: digest,
            thesaurus,
            epsilon,
            cells,
            floors,
            metadata: "loaded".into(),
        })
    }

    /// Test-only constructor bypassing normalization, for algebraic checks
    /// that need hand-picked link probabilities.
    #[cfg(test)]
    pub(crate) fn from_cells(
        thesaurus: Arc<Thesaurus>,
        epsilon: f64,
        cells: BTreeMap<(CatId, CatId), f64>,
        uniform_floor: f64,
    ) -> Self {
        let floors = vec![uniform_floor; thesaurus.class_count()];
        AssociationModel {
            thesaurus_digest: thesaurus.digest(),
            thesaurus,
            epsilon,
            cells,
            floors,
            metadata: "synthetic".into(),
        }
    }
}

/// Per-head probability of an absent cell, derived from the stored cells:
/// the leftover mass spread over the absent cells. Heads with no stored
/// cells get the uniform 1/|S|; fully-stored heads keep their smallest
/// stored probability for classes outside the trained system.
fn reconstruct_floors(cells: &BTreeMap<(CatId, CatId), f64>, class_count: usize) -> Vec<f64> {
    let mut stored_sum = vec![0.0f64; class_count];
    let mut stored_n = vec![0usize; class_count];
    let mut stored_min = vec![f64::INFINITY; class_count];
    for (&(head, _), &prob) in cells {
        let h = head.0 as usize;
        stored_sum[h] += prob;
        stored_n[h] += 1;
        stored_min[h] = stored_min[h].min(prob);
    }
    (0..class_count)
        .map(|h| {
            if stored_n[h] < class_count {
                let floor = (1.0 - stored_sum[h]) / (class_count - stored_n[h]) as f64;
                floor.max(f64::MIN_POSITIVE)
            } else {
                stored_min[h]
            }
        })
        .collect()
}
