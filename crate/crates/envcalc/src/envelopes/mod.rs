//! Upper envelopes built from subdifferential graphs, portable hulls, the
//! level-restricted envelopes, epigraph support tests and the
//! Brøndsted–Rockafellar pair search.

mod brondsted;
mod cup;
mod epi;
mod sharp;

use std::fmt;
use std::str::FromStr;

pub use brondsted::{brondsted_search, BrondstedPair};
pub use cup::{
    cup_dual_form, cup_functional, cup_value, n_cup, smile, smile_eps, star_cup, star_cup_primal_form, upper_envelope,
};
pub use epi::{epi_cup_membership, epigraph_normal_graph};
pub use sharp::{
    circ_exact, circ_grid, dom_sharp_grid, dom_sharp_pl, portable_envelope, portable_hull, sharp_value, DomainHull,
    PortableHull,
};

use crate::error::Error;
use crate::extreal::{ExtReal, Scalar};
use crate::funcrep::MaxAffine;
use crate::point::Point;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnvelopeKind {
    Cup,
    Sharp,
    StarCup,
    Circ,
    NCup,
    Smile,
    SmileEps,
}

impl EnvelopeKind {
    pub const ALL: [EnvelopeKind; 7] = [
        EnvelopeKind::Cup,
        EnvelopeKind::Sharp,
        EnvelopeKind::StarCup,
        EnvelopeKind::Circ,
        EnvelopeKind::NCup,
        EnvelopeKind::Smile,
        EnvelopeKind::SmileEps,
    ];

    pub fn name(self) -> &'static str {
        match self {
            EnvelopeKind::Cup => "cup",
            EnvelopeKind::Sharp => "sharp",
            EnvelopeKind::StarCup => "starcup",
            EnvelopeKind::Circ => "circ",
            EnvelopeKind::NCup => "ncup",
            EnvelopeKind::Smile => "smile",
            EnvelopeKind::SmileEps => "smileeps",
        }
    }
}

impl fmt::Display for EnvelopeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EnvelopeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        EnvelopeKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::parse(format!("unknown envelope kind `{s}`")))
    }
}

/// What an envelope computation produced.
#[derive(Clone, Debug, PartialEq)]
pub enum Carrier<S> {
    Pieces(MaxAffine<S>),
    Table(Vec<(Point<S>, ExtReal<S>)>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct EnvelopeResult<S> {
    pub kind: EnvelopeKind,
    pub carrier: Carrier<S>,
    pub source: String,
    pub n: Option<usize>,
    pub eps: Option<S>,
}

impl<S: Scalar> EnvelopeResult<S> {
    /// Values at `probes`, evaluating a piece carrier or reading a table.
    pub fn values_at(&self, probes: &[Point<S>]) -> Vec<ExtReal<S>> {
        match &self.carrier {
            Carrier::Pieces(m) => probes.iter().map(|p| m.eval(p)).collect(),
            Carrier::Table(t) => probes
                .iter()
                .map(|p| t.iter().find(|(q, _)| q == p).map(|(_, v)| v.clone()).unwrap_or(ExtReal::PosInf))
                .collect(),
        }
    }
}
