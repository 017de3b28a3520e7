//! Certifying that two machine involutions generate the infinite dihedral
//! group.
//!
//! Two distinct non-trivial involutions `α`, `β` generate a copy of
//! `Z ⋊ Z₂` as soon as the group they generate is infinite. Infiniteness
//! is witnessed here by an orbit certificate: the images of `0^{2J+2}`
//! under `(αβ)ʲ` for `j = 0..=J` are pairwise distinct, so the powers
//! `(αβ)⁰, …, (αβ)ᴶ` are distinct maps. The certificate is a finite,
//! independently checkable object; it does not rely on any periodicity
//! argument.

use std::collections::HashMap;
use std::fmt::{self, Write as _};

use rayon::prelude::*;

use crate::dihedral::{psi, xa_normal_form, AffineMap, SemidirectElement, XaLetter};
use crate::error::MachineError;
use crate::group::{element_from_word, CanonicalElement, Generator, GeneratorWord};
use crate::machine::{Alphabet, Letter, MealyMachine, Word};

/// Result of a flip-witness search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FlipSearch {
    /// Least number of applications that changes the letter at the position.
    Found(u64),
    NotFound,
}

/// Least `s ≤ s_max` such that `gˢ(x)` differs from `x` at position `n`.
///
/// Only `x[..=n]` is iterated: position `n` of an image depends on no
/// later input letter.
pub fn flip_witness(g: &CanonicalElement, x: &[Letter], n: usize, s_max: u64) -> Result<FlipSearch, MachineError> {
    if n >= x.len() {
        return Err(MachineError::Usage(format!("position {n} out of range for a prefix of length {}", x.len())));
    }
    let mut y = x[..=n].to_vec();
    for s in 1..=s_max {
        g.pointed().act_in_place(&mut y)?;
        if y[n] != x[n] {
            return Ok(FlipSearch::Found(s));
        }
    }
    Ok(FlipSearch::NotFound)
}

/// Default search bound for position `n`: the orbit of a prefix of length
/// `n + 1` has at most `|A|^{n+1}` points.
pub fn default_flip_bound(alphabet: &Alphabet, n: usize) -> u64 {
    (alphabet.len() as u64).saturating_pow(n as u32 + 1)
}

/// Flip witnesses for `0^{n+1}` at position `n`, for every `n ≤ n_max`,
/// using [`default_flip_bound`]. Positions are searched in parallel on the
/// current rayon pool; results come back in position order.
pub fn flip_witness_table(g: &CanonicalElement, n_max: usize) -> Result<Vec<(usize, FlipSearch)>, MachineError> {
    (0..=n_max)
        .into_par_iter()
        .map(|n| {
            let zeros = vec![Letter(0); n + 1];
            let bound = default_flip_bound(g.alphabet(), n);
            flip_witness(g, &zeros, n, bound).map(|f| (n, f))
        })
        .collect()
}

/// Checks that `gˢ(0^ω)` is zero from position `2s` on, for every
/// `s ≤ s_max`. `0` is the first alphabet letter.
pub fn zero_tail_bound_check(g: &CanonicalElement, s_max: u64) -> Result<bool, MachineError> {
    let len = usize::try_from(2 * s_max + 4).map_err(|_| MachineError::Usage("bound too large".into()))?;
    let mut y = vec![Letter(0); len];
    for s in 0..=s_max as usize {
        if y[2 * s..].iter().any(|&l| l != Letter(0)) {
            return Ok(false);
        }
        g.pointed().act_in_place(&mut y)?;
    }
    Ok(true)
}

/// Pairwise-distinct orbit prefixes `gʲ(0^{2J+2})`, `j = 0..=J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfinitenessCertificate {
    pub depth: usize,
    pub prefixes: Vec<Word>,
    /// `(n, s)`: the least `s ≤ J` whose prefix differs from the zero word
    /// at position `n`. Positions never flipped within the depth are absent.
    pub flip_witnesses: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CertifyError {
    #[error("orbit prefixes {0} and {1} coincide")]
    Collision(usize, usize),
    #[error(transparent)]
    Machine(#[from] MachineError),
}

/// Builds an [`InfinitenessCertificate`] of depth `depth` for `g`.
pub fn certify_infinite(g: &CanonicalElement, depth: usize) -> Result<InfinitenessCertificate, CertifyError> {
    if depth == 0 {
        return Err(MachineError::Usage("certificate depth must be positive".into()).into());
    }
    let mut y = vec![Letter(0); 2 * depth + 2];
    let mut first_seen: HashMap<Word, usize> = HashMap::new();
    let mut prefixes = Vec::with_capacity(depth + 1);
    for j in 0..=depth {
        if let Some(&i) = first_seen.get(&y) {
            return Err(CertifyError::Collision(i, j));
        }
        first_seen.insert(y.clone(), j);
        prefixes.push(y.clone());
        g.pointed().act_in_place(&mut y)?;
    }
    let flip_witnesses = (0..prefixes[0].len())
        .filter_map(|n| prefixes.iter().position(|p| p[n] != Letter(0)).map(|s| (n, s)))
        .collect();
    Ok(InfinitenessCertificate { depth, prefixes, flip_witnesses })
}

impl InfinitenessCertificate {
    /// Recomputes every prefix letter by letter and compares all pairs.
    pub fn verify(&self, g: &CanonicalElement) -> bool {
        let len = 2 * self.depth + 2;
        let mut current: Word = vec![Letter(0); len];
        for (j, stored) in self.prefixes.iter().enumerate() {
            if *stored != current || j > self.depth {
                return false;
            }
            current = g.pointed().transduce(current.iter().copied()).collect();
        }
        if self.prefixes.len() != self.depth + 1 {
            return false;
        }
        for i in 0..self.prefixes.len() {
            for j in i + 1..self.prefixes.len() {
                if self.prefixes[i] == self.prefixes[j] {
                    return false;
                }
            }
        }
        true
    }

    /// Line-oriented report: header, one line per prefix, one per witness.
    pub fn report(&self, machine: &str, generators: &str, alphabet: &Alphabet) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "machine {machine}");
        let _ = writeln!(out, "generators {generators}");
        let _ = writeln!(out, "depth {}", self.depth);
        for (j, p) in self.prefixes.iter().enumerate() {
            let _ = writeln!(out, "prefix {j} {}", alphabet.format_word(p));
        }
        for (n, s) in &self.flip_witnesses {
            let _ = writeln!(out, "flip {n} {s}");
        }
        out
    }
}

/// Why a generator pair cannot be two distinct non-trivial involutions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Degeneracy {
    IdentityGenerator(String),
    EqualGenerators,
}

/// A generator pair certified to generate the infinite dihedral group.
#[derive(Clone, Debug)]
pub struct CertifiedDihedral {
    machine: MealyMachine,
    generators: [String; 2],
    certificate: InfinitenessCertificate,
}

/// Outcome of [`recognize_dihedral`].
#[derive(Clone, Debug)]
pub enum DihedralVerdict {
    Certified(CertifiedDihedral),
    /// The named generator does not square to the identity.
    NotInvolutions(String),
    Degenerate(Degeneracy),
    /// `gen₁gen₂` repeated an orbit prefix within the depth. This is not a
    /// proof of finiteness.
    Inconclusive {
        depth: usize,
        collision: (usize, usize),
    },
}

impl DihedralVerdict {
    pub fn is_certified(&self) -> bool {
        matches!(self, DihedralVerdict::Certified(_))
    }

    /// Process exit code: 0 certified, 2 inconclusive, 3 refuted.
    pub fn exit_code(&self) -> i32 {
        match self {
            DihedralVerdict::Certified(_) => 0,
            DihedralVerdict::Inconclusive { .. } => 2,
            DihedralVerdict::NotInvolutions(_) | DihedralVerdict::Degenerate(_) => 3,
        }
    }
}

/// Decides whether states `gen1`, `gen2` are distinct non-trivial
/// involutions whose product `a = gen₁gen₂` has an orbit certificate of
/// depth `depth`.
pub fn recognize_dihedral(
    machine: &MealyMachine,
    gen1: &str,
    gen2: &str,
    depth: usize,
) -> Result<DihedralVerdict, MachineError> {
    let alpha = element_from_word(machine, &GeneratorWord::positive([gen1]))?;
    let beta = element_from_word(machine, &GeneratorWord::positive([gen2]))?;
    for (name, g) in [(gen1, &alpha), (gen2, &beta)] {
        if g.is_identity() {
            return Ok(DihedralVerdict::Degenerate(Degeneracy::IdentityGenerator(name.to_owned())));
        }
    }
    if alpha == beta {
        return Ok(DihedralVerdict::Degenerate(Degeneracy::EqualGenerators));
    }
    for (name, g) in [(gen1, &alpha), (gen2, &beta)] {
        if !g.mul(g)?.is_identity() {
            return Ok(DihedralVerdict::NotInvolutions(name.to_owned()));
        }
    }
    let a = alpha.mul(&beta)?;
    match certify_infinite(&a, depth) {
        Ok(certificate) => Ok(DihedralVerdict::Certified(CertifiedDihedral {
            machine: machine.clone(),
            generators: [gen1.to_owned(), gen2.to_owned()],
            certificate,
        })),
        Err(CertifyError::Collision(i, j)) => Ok(DihedralVerdict::Inconclusive { depth, collision: (i, j) }),
        Err(CertifyError::Machine(e)) => Err(e),
    }
}

impl CertifiedDihedral {
    pub fn machine(&self) -> &MealyMachine {
        &self.machine
    }

    pub fn generators(&self) -> [&str; 2] {
        [&self.generators[0], &self.generators[1]]
    }

    pub fn certificate(&self) -> &InfinitenessCertificate {
        &self.certificate
    }

    /// The product `gen₁gen₂`, playing the role of the translation `a`.
    pub fn translation(&self) -> CanonicalElement {
        let [g1, g2] = self.generators();
        element_from_word(&self.machine, &GeneratorWord::positive([g1, g2])).expect("certified generators")
    }

    /// Coordinates of each generator in `Z ⋊ Z₂` and as isometries.
    pub fn generator_map(&self) -> [(String, SemidirectElement, AffineMap); 2] {
        self.generators.clone().map(|g| {
            let c = self.coordinates(&GeneratorWord::positive([g.as_str()])).expect("generator letter");
            let s = psi(&c);
            (g, c, s)
        })
    }

    /// Coordinates of a word over the two generators.
    ///
    /// The word is freely reduced using `gen₁² = gen₂² = e`, rewritten with
    /// `gen₁ = a x` and `gen₂ = x`, and sent to `aᵏ ↦ (k, 0)`,
    /// `aᵏx ↦ (k − 1, 1)`.
    pub fn coordinates(&self, word: &GeneratorWord) -> Result<SemidirectElement, MachineError> {
        let mut reduced: Vec<usize> = Vec::with_capacity(word.len());
        for Generator { state, .. } in word.letters() {
            let i = self
                .generators
                .iter()
                .position(|g| g == state)
                .ok_or_else(|| MachineError::Usage(format!("`{state}` is not a certified generator")))?;
            if reduced.last() == Some(&i) {
                reduced.pop();
            } else {
                reduced.push(i);
            }
        }
        let xa: Vec<XaLetter> = reduced
            .iter()
            .flat_map(|&i| if i == 0 { &[XaLetter::A, XaLetter::X][..] } else { &[XaLetter::X][..] })
            .copied()
            .collect();
        Ok(xa_normal_form(&xa))
    }
}

impl fmt::Display for DihedralVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DihedralVerdict::Certified(c) => {
                writeln!(f, "CertifiedDihedral")?;
                for (g, coord, map) in c.generator_map() {
                    writeln!(f, "{g} -> {coord} = {map}")?;
                }
                Ok(())
            }
            DihedralVerdict::NotInvolutions(g) => writeln!(f, "NotInvolutions: {g} does not square to the identity"),
            DihedralVerdict::Degenerate(Degeneracy::IdentityGenerator(g)) => {
                writeln!(f, "DegenerateGenerators: {g} is the identity")
            }
            DihedralVerdict::Degenerate(Degeneracy::EqualGenerators) => {
                writeln!(f, "DegenerateGenerators: generators are equal")
            }
            DihedralVerdict::Inconclusive { depth, collision: (i, j) } => {
                writeln!(f, "Inconclusive: orbit prefixes {i} and {j} coincide at depth {depth}")
            }
        }
    }
}
