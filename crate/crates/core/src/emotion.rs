//! The six basic emotions and their canonical order.

use core::fmt;

/// Discriminants fix the canonical class order used for score vectors,
/// matrix axes, and argmax tie-breaking.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Emotion {
    Joy = 0,
    Anger = 1,
    Fear = 2,
    Sadness = 3,
    Surprise = 4,
    Disgust = 5,
}

pub const EMOTION_COUNT: usize = 6;

impl Emotion {
    pub const ALL: [Emotion; EMOTION_COUNT] = [
        Emotion::Joy,
        Emotion::Anger,
        Emotion::Fear,
        Emotion::Sadness,
        Emotion::Surprise,
        Emotion::Disgust,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(index: usize) -> Option<Emotion> {
        Emotion::ALL.get(index).copied()
    }

    pub fn name(self) -> &'static str {
        match self {
            Emotion::Joy => "joy",
            Emotion::Anger => "anger",
            Emotion::Fear => "fear",
            Emotion::Sadness => "sadness",
            Emotion::Surprise => "surprise",
            Emotion::Disgust => "disgust",
        }
    }

    pub fn parse(name: &str) -> Option<Emotion> {
        Emotion::ALL.iter().copied().find(|e| e.name() == name)
    }

    /// Index of the highest score; ties go to the lowest class index.
    pub fn argmax(scores: &[f64; EMOTION_COUNT]) -> Emotion {
        let mut best = 0;
        for (i, &s) in scores.iter().enumerate().skip(1) {
            if s > scores[best] {
                best = i;
            }
        }
        Emotion::from_index(best).unwrap()
    }
}

impl fmt::Display for Emotion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order_round_trips() {
        for (i, e) in Emotion::ALL.iter().enumerate() {
            assert_eq!(e.index(), i);
            assert_eq!(Emotion::from_index(i), Some(*e));
            assert_eq!(Emotion::parse(e.name()), Some(*e));
        }
        assert_eq!(Emotion::from_index(6), None);
        assert_eq!(Emotion::parse("happiness"), None);
    }

    #[test]
    fn argmax_breaks_ties_toward_lowest_index() {
        let scores = [1.0, 1.0, 1.0, 1.0, 1.0, 1.0];
        assert_eq!(Emotion::argmax(&scores), Emotion::Joy);
        let scores = [0.0, 2.0, 2.0, 0.0, 0.0, 0.0];
        assert_eq!(Emotion::argmax(&scores), Emotion::Anger);
        let scores = [-1.0, -2.0, -3.0, -0.5, -4.0, -0.5];
        assert_eq!(Emotion::argmax(&scores), Emotion::Sadness);
    }
}
