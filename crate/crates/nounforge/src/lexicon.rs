//! Thesaurus ingestion and word-level probability primitives.
//!
//! The thesaurus defines the semantic class system: flat categories of
//! words, with a word possibly belonging to several categories. Queries are
//! read-only after load, so a [`Thesaurus`] is safe to share across threads.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::io::{self, BufRead, Write};

use sha2::{Digest, Sha256};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid word {0:?}: must be nonempty without whitespace")]
    InvalidWord(String),
    #[error("invalid category label {0:?}: must be nonempty without whitespace")]
    InvalidLabel(String),
    #[error("word {0:?} is not in the thesaurus")]
    UnknownWord(String),
    #[error("category {category:?} does not contain {word:?}")]
    NotASenseOf { word: String, category: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// A normalized word: lowercased, nonempty, no whitespace.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(String);

impl Word {
    pub fn new(surface: &str) -> Result<Self, LexiconError> {
        if surface.is_empty() || surface.chars().any(char::is_whitespace) {
            return Err(LexiconError::InvalidWord(surface.to_string()));
        }
        Ok(Word(surface.to_lowercase()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<Word> for String {
    fn from(w: Word) -> String {
        w.0
    }
}

/// Dense handle for a category; ordering follows the label ordering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CatId(pub(crate) u32);

/// Dense handle for a word interned by a [`Thesaurus`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WordId(pub(crate) u32);

/// Policy for words missing from the thesaurus at analysis time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum UnknownWordPolicy {
    /// Treat the word as the sole member of its own fresh class. Keeps
    /// analysis total without touching trained parameters.
    #[default]
    SingletonClass,
    /// Reject the compound.
    Error,
}

struct CategoryData {
    label: String,
    members: Vec<WordId>, // ascending
}

/// The semantic class system: categories as word sets plus a word index.
///
/// Internally canonicalized: category ids are assigned in label order and
/// word ids in (label, word) reading order of the canonical dump, so two
/// loads of the same records produce identical tables regardless of input
/// line order.
pub struct Thesaurus {
    categories: Vec<CategoryData>,
    category_by_label: HashMap<String, CatId>,
    words: Vec<String>,
    word_by_surface: HashMap<String, WordId>,
    cats_of_word: Vec<Vec<CatId>>, // ascending per word
}

impl Thesaurus {
    /// Parses the thesaurus file format: one `<category_id><TAB><word>`
    /// record per line, `#` comments and blank lines ignored, words
    /// lowercased. Duplicate records are idempotent.
    pub fn load(reader: impl BufRead) -> Result<Self, LexiconError> {
        let mut records: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
        for (index, line) in reader.lines().enumerate() {
            let line = line?;
            let number = index + 1;
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut fields = line.split('\t');
            let (label, word) = match (fields.next(), fields.next(), fields.next()) {
                (Some(label), Some(word), None) => (label, word),
                _ => {
                    return Err(LexiconError::Parse {
                        line: number,
                        message: format!("expected 2 tab-separated fields: {line:?}"),
                    })
                }
            };
            let word = Word::new(word).map_err(|e| LexiconError::Parse {
                line: number,
                message: e.to_string(),
            })?;
            validate_label(label).map_err(|e| LexiconError::Parse {
                line: number,
                message: e.to_string(),
            })?;
            records
                .entry(label.to_string())
                .or_default()
                .insert(word.into());
        }
        Ok(Self::build(records))
    }

    /// Builds a thesaurus from `(category label, word)` pairs.
    pub fn from_entries<L, W>(
        entries: impl IntoIterator<Item = (L, W)>,
    ) -> Result<Self, LexiconError>
    where
        L: AsRef<str>,
        W: AsRef<str>,
    {
        let mut records: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
        for (label, word) in entries {
            validate_label(label.as_ref())?;
            let word = Word::new(word.as_ref())?;
            records
                .entry(label.as_ref().to_string())
                .or_default()
                .insert(word.into());
        }
        Ok(Self::build(records))
    }

    fn build(records: BTreeMap<String, BTreeSet<String>>) -> Self {
        let mut categories = Vec::with_capacity(records.len());
        let mut category_by_label = HashMap::with_capacity(records.len());
        let mut words: Vec<String> = Vec::new();
        let mut word_by_surface: HashMap<String, WordId> = HashMap::new();
        let mut cats_of_word: Vec<Vec<CatId>> = Vec::new();
        for (cat_index, (label, members)) in records.into_iter().enumerate() {
            let cat_id = CatId(cat_index as u32);
            let mut member_ids = Vec::with_capacity(members.len());
            for surface in members {
                let word_id = *word_by_surface.entry(surface.clone()).or_insert_with(|| {
                    words.push(surface);
                    cats_of_word.push(Vec::new());
                    WordId(words.len() as u32 - 1)
                });
                member_ids.push(word_id);
                cats_of_word[word_id.0 as usize].push(cat_id);
            }
            member_ids.sort_unstable();
            category_by_label.insert(label.clone(), cat_id);
            categories.push(CategoryData {
                label,
                members: member_ids,
            });
        }
        Thesaurus {
            categories,
            category_by_label,
            words,
            word_by_surface,
            cats_of_word,
        }
    }

    pub fn class_count(&self) -> usize {
        self.categories.len()
    }

    pub fn category_ids(&self) -> impl Iterator<Item = CatId> {
        (0..self.categories.len() as u32).map(CatId)
    }

    pub fn category_label(&self, cat: CatId) -> &str {
        &self.categories[cat.0 as usize].label
    }

    pub fn category_id(&self, label: &str) -> Option<CatId> {
        self.category_by_label.get(label).copied()
    }

    pub fn category_size(&self, cat: CatId) -> usize {
        self.categories[cat.0 as usize].members.len()
    }

    pub fn members(&self, cat: CatId) -> &[WordId] {
        &self.categories[cat.0 as usize].members
    }

    pub fn word_id(&self, word: &Word) -> Option<WordId> {
        self.word_by_surface.get(word.as_str()).copied()
    }

    pub fn word_surface(&self, id: WordId) -> &str {
        &self.words[id.0 as usize]
    }

    /// The categories containing `word`, ascending; empty when unknown.
    pub fn cats(&self, word: &Word) -> &[CatId] {
        match self.word_id(word) {
            Some(id) => self.cats_by_id(id),
            None => &[],
        }
    }

    pub fn cats_by_id(&self, word: WordId) -> &[CatId] {
        &self.cats_of_word[word.0 as usize]
    }

    /// `|cats(word)|`; unknown words are a domain error because the class
    /// system is assumed to cover every word.
    pub fn ambiguity(&self, word: &Word) -> Result<usize, LexiconError> {
        let cats = self.cats(word);
        if cats.is_empty() {
            return Err(LexiconError::UnknownWord(word.to_string()));
        }
        Ok(cats.len())
    }

    /// `P(category | word)`: the reciprocal of the category size, normalized
    /// over the word's categories. Equi-probable classes make P(word | s)
    /// proportional to 1/|s|, so the prior depends only on the sizes of the
    /// word's categories.
    pub fn sense_prior(&self, word: &Word, cat: CatId) -> Result<f64, LexiconError> {
        let cats = self.cats(word);
        if cats.is_empty() {
            return Err(LexiconError::UnknownWord(word.to_string()));
        }
        let Some(index) = cats.iter().position(|&c| c == cat) else {
            return Err(LexiconError::NotASenseOf {
                word: word.to_string(),
                category: self
                    .categories
                    .get(cat.0 as usize)
                    .map(|c| c.label.clone())
                    .unwrap_or_else(|| format!("#{}", cat.0)),
            });
        };
        let sizes: Vec<u64> = cats.iter().map(|&c| self.category_size(c) as u64).collect();
        Ok(sense_prior_from_sizes(&sizes, index))
    }

    /// Canonical dump: records sorted by category label then word. This is
    /// the reference serialization the digest is computed over.
    pub fn dump(&self, mut sink: impl Write) -> io::Result<()> {
        let mut order: Vec<usize> = (0..self.categories.len()).collect();
        order.sort_by(|&a, &b| self.categories[a].label.cmp(&self.categories[b].label));
        for cat_index in order {
            let cat = &self.categories[cat_index];
            let mut surfaces: Vec<&str> = cat
                .members
                .iter()
                .map(|&w| self.word_surface(w))
                .collect();
            surfaces.sort_unstable();
            for surface in surfaces {
                writeln!(sink, "{}\t{}", cat.label, surface)?;
            }
        }
        Ok(())
    }

    pub fn dump_string(&self) -> String {
        let mut out = Vec::new();
        self.dump(&mut out).expect("writing to a Vec cannot fail");
        String::from_utf8(out).expect("dump is UTF-8")
    }

    /// SHA-256 of the canonical dump, lowercase hex.
    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(self.dump_string().as_bytes()))
    }
}

fn validate_label(label: &str) -> Result<(), LexiconError> {
    if label.is_empty() || label.chars().any(char::is_whitespace) {
        return Err(LexiconError::InvalidLabel(label.to_string()));
    }
    Ok(())
}

/// Normalized reciprocal-size prior for `sizes[index]`.
///
/// Uses exact integer cross-products (numerator_k = product of the other
/// sizes, denominator = their sum) while everything fits in 53 bits, so the
/// result is a single correctly-rounded division and size ratios survive
/// exactly. Falls back to reciprocal sums beyond that range.
fn sense_prior_from_sizes(sizes: &[u64], index: usize) -> f64 {
    const EXACT_LIMIT: u128 = 1 << 53;
    let mut numerators = Vec::with_capacity(sizes.len());
    let mut denominator: u128 = 0;
    let mut exact = true;
    'exact: for k in 0..sizes.len() {
        let mut product: u128 = 1;
        for (j, &size) in sizes.iter().enumerate() {
            if j == k {
                continue;
            }
            product = match product.checked_mul(size as u128) {
                Some(p) if p <= EXACT_LIMIT => p,
                _ => {
                    exact = false;
                    break 'exact;
                }
            };
        }
        denominator = match denominator.checked_add(product) {
            Some(d) if d <= EXACT_LIMIT => d,
            _ => {
                exact = false;
                break 'exact;
            }
        };
        numerators.push(product);
    }
    if exact {
        return numerators[index] as f64 / denominator as f64;
    }
    let z: f64 = sizes.iter().map(|&s| (s as f64).recip()).sum();
    (sizes[index] as f64).recip() / z
}
