//! Optical modes and coincidence events.

use alloc::string::String;
use core::fmt;

/// Photon polarization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pol {
    H,
    V,
}

impl Pol {
    pub fn parse(s: &str) -> Option<Pol> {
        match s {
            "H" | "h" => Some(Pol::H),
            "V" | "v" => Some(Pol::V),
            _ => None,
        }
    }
}

impl fmt::Display for Pol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pol::H => write!(f, "H"),
            Pol::V => write!(f, "V"),
        }
    }
}

/// A named spatial rail ("a1", "c7", ...).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rail(pub String);

impl Rail {
    pub fn new(name: &str) -> Rail {
        Rail(String::from(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Rail {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// One optical mode: a rail and a polarization.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mode {
    pub rail: Rail,
    pub pol: Pol,
}

impl Mode {
    pub fn new(rail: &str, pol: Pol) -> Mode {
        Mode {
            rail: Rail::new(rail),
            pol,
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.rail, self.pol)
    }
}

/// A single-photon detector, numbered from 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Detector(pub u8);

impl fmt::Display for Detector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D{}", self.0)
    }
}

/// An unordered detector pair; both photons on one detector is allowed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoincidenceEvent {
    lo: Detector,
    hi: Detector,
}

impl CoincidenceEvent {
    pub fn new(a: Detector, b: Detector) -> CoincidenceEvent {
        if a.0 <= b.0 {
            CoincidenceEvent { lo: a, hi: b }
        } else {
            CoincidenceEvent { lo: b, hi: a }
        }
    }

    pub fn of(a: u8, b: u8) -> CoincidenceEvent {
        CoincidenceEvent::new(Detector(a), Detector(b))
    }

    pub fn detectors(&self) -> (Detector, Detector) {
        (self.lo, self.hi)
    }

    /// True when both photons landed on the same detector.
    pub fn is_same_detector(&self) -> bool {
        self.lo == self.hi
    }
}

impl fmt::Display for CoincidenceEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.lo, self.hi)
    }
}
