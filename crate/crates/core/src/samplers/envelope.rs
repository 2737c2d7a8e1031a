//! Two sealed envelopes holding different cards.
//!
//! Before opening, the pair is an equal-weight mixture of the two possible
//! deals. Opening Alice's envelope conditions that mixture on what she saw;
//! Bob's envelope is never touched.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::RngStream;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Card {
    AceOfHearts,
    AceOfSpades,
}

impl Card {
    pub fn other(self) -> Card {
        match self {
            Card::AceOfHearts => Card::AceOfSpades,
            Card::AceOfSpades => Card::AceOfHearts,
        }
    }
}

impl fmt::Display for Card {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Card::AceOfHearts => f.write_str("ace_of_hearts"),
            Card::AceOfSpades => f.write_str("ace_of_spades"),
        }
    }
}

/// The two possible deals `(alice, bob)`, each with weight 1/2.
const BRANCHES: [(Card, Card, f64); 2] = [
    (Card::AceOfHearts, Card::AceOfSpades, 0.5),
    (Card::AceOfSpades, Card::AceOfHearts, 0.5),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnvelopeState {
    alice_card: Card,
    alice_opened: bool,
}

impl EnvelopeState {
    pub fn deal(rng: &mut RngStream) -> EnvelopeState {
        let alice_card = if rng.coin() {
            Card::AceOfHearts
        } else {
            Card::AceOfSpades
        };
        EnvelopeState {
            alice_card,
            alice_opened: false,
        }
    }

    pub fn alice_card(&self) -> Card {
        self.alice_card
    }

    pub fn bob_card(&self) -> Card {
        self.alice_card.other()
    }

    pub fn alice_opened(&self) -> bool {
        self.alice_opened
    }

    pub fn open_alice(&mut self) -> Card {
        self.alice_opened = true;
        self.alice_card
    }

    /// Alice's probability that Bob holds `card`, given what she has seen.
    pub fn prob_bob_holds(&self, card: Card) -> f64 {
        let consistent = |alice: Card| !self.alice_opened || alice == self.alice_card;
        let evidence: f64 = BRANCHES
            .iter()
            .filter(|(alice, _, _)| consistent(*alice))
            .map(|(_, _, w)| w)
            .sum();
        let joint: f64 = BRANCHES
            .iter()
            .filter(|(alice, bob, _)| consistent(*alice) && *bob == card)
            .map(|(_, _, w)| w)
            .sum();
        joint / evidence
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnvelopeTranscript {
    /// P(Bob has the ace of hearts) before Alice opens.
    pub prior_prob: f64,
    pub observed_card: Card,
    /// P(Bob has the ace of hearts) after Alice opens.
    pub posterior_prob: f64,
    pub bob_card: Card,
}

pub fn envelope_demo(rng: &mut RngStream) -> EnvelopeTranscript {
    let mut state = EnvelopeState::deal(rng);
    let prior_prob = state.prob_bob_holds(Card::AceOfHearts);
    let observed_card = state.open_alice();
    EnvelopeTranscript {
        prior_prob,
        observed_card,
        posterior_prob: state.prob_bob_holds(Card::AceOfHearts),
        bob_card: state.bob_card(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn posterior_follows_observation() {
        let mut rng = RngStream::new(2024, 0);
        let mut seen = [false; 2];
        for _ in 0..64 {
            let t = envelope_demo(&mut rng);
            assert_eq!(t.prior_prob, 0.5);
            match t.observed_card {
                Card::AceOfHearts => {
                    assert_eq!(t.posterior_prob, 0.0);
                    seen[0] = true;
                }
                Card::AceOfSpades => {
                    assert_eq!(t.posterior_prob, 1.0);
                    seen[1] = true;
                }
            }
            assert_ne!(t.observed_card, t.bob_card);
        }
        assert_eq!(seen, [true, true]);
    }

    #[test]
    fn bob_frequency_matches_prior() {
        let mut rng = RngStream::new(7, 0);
        let runs = 10_000;
        let hearts = (0..runs)
            .filter(|_| envelope_demo(&mut rng).bob_card == Card::AceOfHearts)
            .count();
        let freq = hearts as f64 / runs as f64;
        assert!((freq - 0.5).abs() <= 0.015, "freq = {freq}");
    }
}
