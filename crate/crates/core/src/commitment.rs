//! Bit commitment to two LOCC-restricted receivers, simulated on Bell labels.
//!
//! Alice commits by handing out the halves of a label from `Eₙ` or `Oₙ`.
//! To open she supplies `n + r` further pairs that should be singlets. The
//! Bobs run `r` rounds of bilateral parity checks on all of them, drop the
//! last `r`, and teleport Bob-1's halves to Bob-2 through the first `n`.
//! Bob-2 then reads the label and its singlet parity.
//!
//! Every step is Pauli-level, so a state is a Bell label and a mixed state is
//! a distribution over labels. Teleporting through pair `s` instead of a
//! singlet applies the Pauli error `s ⊕ 11` to the teleported pair.
//!
//! Alice may also commit to a superposition of the two classes; Bob-2 then
//! reads a random bit. That variant is not modelled here.

use rand::Rng;
use serde::Serialize;

use crate::bell::{BellLabel, MAX_PAIRS};
use crate::error::{Error, Result};
use crate::locc::sample_label;
use crate::pauli::PauliString;
use crate::rng::{run_blocks, stream_rng};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Phase {
    Init,
    Committed,
    Opened,
    Aborted,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum Event {
    Committed { pairs: usize },
    OpenPairsReceived { pairs: usize },
    Check { round: usize, check: PauliString, outcome: i8, expected: i8 },
    TestFailed { round: usize },
    TestPassed,
    Teleported { pairs: usize },
    Decoded { label: BellLabel, bit: u8 },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum CheatModel {
    Honest,
    /// Open pairs orthogonal to the singlets, chosen so that teleportation
    /// flips the committed parity.
    WrongParityOpen,
    /// Singlets with probability `α`, otherwise the `WrongParityOpen` pairs.
    NonSingletOpen(f64),
}

impl CheatModel {
    /// Fidelity of the open pairs with `n + r` singlets.
    pub fn alpha(&self) -> f64 {
        match *self {
            CheatModel::Honest => 1.0,
            CheatModel::WrongParityOpen => 0.0,
            CheatModel::NonSingletOpen(a) => a,
        }
    }

    fn validate(&self) -> Result<()> {
        if let CheatModel::NonSingletOpen(a) = *self {
            if !(0.0..=1.0).contains(&a) {
                return Err(Error::invalid(format!("fidelity {a} outside [0, 1]")));
            }
        }
        Ok(())
    }
}

/// Draws a uniformly random check string on `m` pairs. Each pair joins the
/// check with probability ¾ and then carries a uniform non-identity `c`, so
/// any non-singlet configuration is caught with probability exactly ½.
pub fn random_check<R: Rng + ?Sized>(m: usize, rng: &mut R) -> PauliString {
    let mut x = 0u64;
    let mut z = 0u64;
    for j in 0..m {
        if rng.random::<f64>() < 0.75 {
            let c = rng.random_range(1u8..4);
            x |= ((c >> 1) as u64 & 1) << j;
            z |= (c as u64 & 1) << j;
        }
    }
    PauliString::new(m, x, z, false).expect("m within range")
}

fn check_round(pairs: &BellLabel, check: &PauliString) -> Result<(i8, i8)> {
    let expected = BellLabel::singlets(pairs.num_pairs()).parity_sign(check)?;
    Ok((pairs.parity_sign(check)?, expected))
}

/// `r` rounds of bilateral parity checks; passes iff every outcome matches
/// the all-singlet value.
pub fn hashing_test(pairs: &BellLabel, r: usize, seed: u64) -> Result<bool> {
    if pairs.num_pairs() < r || pairs.num_pairs() == 0 {
        return Err(Error::InsufficientPairs { need: r.max(1), have: pairs.num_pairs() });
    }
    let mut rng = stream_rng(seed, "hashing", 0);
    for _ in 0..r {
        let (got, want) = check_round(pairs, &random_check(pairs.num_pairs(), &mut rng))?;
        if got != want {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CommitmentSession {
    pub n: usize,
    pub r: usize,
    pub phase: Phase,
    pub committed: Option<BellLabel>,
    pub transcript: Vec<Event>,
}

impl CommitmentSession {
    pub fn new(n: usize, r: usize) -> Result<CommitmentSession> {
        if n == 0 || r == 0 {
            return Err(Error::invalid("n and r must be at least 1"));
        }
        if n + r > MAX_PAIRS {
            return Err(Error::cap("n + r", n + r, MAX_PAIRS));
        }
        Ok(CommitmentSession { n, r, phase: Phase::Init, committed: None, transcript: Vec::new() })
    }

    /// Alice hands out a uniform label with singlet parity `b`.
    pub fn commit<R: Rng + ?Sized>(&mut self, b: u8, rng: &mut R) -> Result<BellLabel> {
        if self.phase != Phase::Init {
            return Err(Error::invalid(format!("commit in phase {:?}", self.phase)));
        }
        if b > 1 {
            return Err(Error::invalid(format!("hidden bit must be 0 or 1, got {b}")));
        }
        let label = sample_label(self.n, b, rng);
        self.committed = Some(label);
        self.phase = Phase::Committed;
        self.transcript.push(Event::Committed { pairs: self.n });
        Ok(label)
    }

    /// The Bobs check `open` and, if it passes, return Bob-2's decoded bit.
    pub fn open<R: Rng + ?Sized>(&mut self, open: &BellLabel, rng: &mut R) -> Result<Option<u8>> {
        if self.phase != Phase::Committed {
            return Err(Error::invalid(format!("open in phase {:?}", self.phase)));
        }
        let total = self.n + self.r;
        if open.num_pairs() != total {
            return Err(Error::InsufficientPairs { need: total, have: open.num_pairs() });
        }
        self.transcript.push(Event::OpenPairsReceived { pairs: total });
        for round in 0..self.r {
            let check = random_check(total, rng);
            let (outcome, expected) = check_round(open, &check)?;
            self.transcript.push(Event::Check { round, check, outcome, expected });
            if outcome != expected {
                self.transcript.push(Event::TestFailed { round });
                self.phase = Phase::Aborted;
                return Ok(None);
            }
        }
        self.transcript.push(Event::TestPassed);
        let committed = self.committed.expect("committed phase has a label");
        let keep = (1u64 << self.n) - 1;
        let resource = BellLabel::new(self.n, open.amp_bits() & keep, open.phase_bits() & keep)?;
        let error = resource.xor(&BellLabel::singlets(self.n))?;
        let label = committed.xor(&error)?;
        self.transcript.push(Event::Teleported { pairs: self.n });
        let bit = (label.n11() % 2) as u8;
        self.transcript.push(Event::Decoded { label, bit });
        self.phase = Phase::Opened;
        Ok(Some(bit))
    }
}

/// The open pairs of the cheating strategy: singlets except pair 0, whose
/// teleportation error toggles whether committed pair 0 is a singlet.
pub fn wrong_parity_pairs(committed: &BellLabel, r: usize) -> Result<BellLabel> {
    let total = committed.num_pairs() + r;
    let target = if committed.pair(0) == 3 { 2 } else { 3 };
    let error = committed.pair(0) ^ target;
    Ok(BellLabel::singlets(total).with_pair(0, 3 ^ error))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SessionOutcome {
    pub b: u8,
    pub passed: bool,
    pub decoded: Option<u8>,
    /// Open pairs were true singlets in this run.
    pub singlet_component: bool,
    pub session: CommitmentSession,
}

impl SessionOutcome {
    pub fn flipped(&self) -> bool {
        self.decoded.is_some_and(|d| d != self.b)
    }
}

fn session_with<R: Rng + ?Sized>(n: usize, r: usize, b: u8, cheat: CheatModel, rng: &mut R) -> Result<SessionOutcome> {
    cheat.validate()?;
    let mut session = CommitmentSession::new(n, r)?;
    let committed = session.commit(b, rng)?;
    let singlet_component = match cheat {
        CheatModel::Honest => true,
        CheatModel::WrongParityOpen => false,
        CheatModel::NonSingletOpen(a) => rng.random::<f64>() < a,
    };
    let open = if singlet_component { BellLabel::singlets(n + r) } else { wrong_parity_pairs(&committed, r)? };
    let decoded = session.open(&open, rng)?;
    Ok(SessionOutcome { b, passed: decoded.is_some(), decoded, singlet_component, session })
}

/// One full session from its own seed.
pub fn run_session(n: usize, r: usize, b: u8, cheat: CheatModel, seed: u64) -> Result<SessionOutcome> {
    session_with(n, r, b, cheat, &mut stream_rng(seed, "commit-session", 0))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CommitStats {
    pub sessions: u64,
    pub pass_rate: f64,
    /// Fraction of passing sessions where Bob-2 reads the committed bit.
    pub decode_accuracy: f64,
    /// Fraction of all sessions that pass with the opposite bit.
    pub flip_success_rate: f64,
}

#[derive(Default)]
struct Tally {
    passed: u64,
    correct: u64,
    flipped: u64,
}

/// `sessions` independent runs with uniform hidden bits.
pub fn run_sessions(n: usize, r: usize, cheat: CheatModel, sessions: u64, seed: u64) -> Result<CommitStats> {
    if sessions == 0 {
        return Err(Error::invalid("sessions must be at least 1"));
    }
    CommitmentSession::new(n, r)?;
    cheat.validate()?;
    let blocks = run_blocks(sessions, seed, "commit-batch", |rng, count| -> Result<Tally> {
        let mut t = Tally::default();
        for _ in 0..count {
            let b = rng.random::<bool>() as u8;
            let out = session_with(n, r, b, cheat, rng)?;
            t.passed += out.passed as u64;
            t.correct += (out.decoded == Some(b)) as u64;
            t.flipped += out.flipped() as u64;
        }
        Ok(t)
    });
    let mut total = Tally::default();
    for t in blocks {
        let t = t?;
        total.passed += t.passed;
        total.correct += t.correct;
        total.flipped += t.flipped;
    }
    let s = sessions as f64;
    Ok(CommitStats {
        sessions,
        pass_rate: total.passed as f64 / s,
        decode_accuracy: if total.passed == 0 { 0.0 } else { total.correct as f64 / total.passed as f64 },
        flip_success_rate: total.flipped as f64 / s,
    })
}
