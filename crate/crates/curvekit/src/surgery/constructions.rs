//! Ladders carrying spirals of prescribed width, built by repeated twisting.

use super::{find_spirals, spiral_addition, AdditionSite, Spiral, SurgeryError};
use crate::ladder::{l10, Ladder};
use crate::surface::SurfaceComplex;

/// A ladder obtained from `base` by `m` twists at `site`, expected to carry
/// a spiral of the given length and width.
#[derive(Debug, Clone)]
pub struct SpiralConstruction {
    pub name: &'static str,
    pub base: Ladder,
    pub site: AdditionSite,
    pub m: usize,
    pub length: usize,
    pub width: usize,
}

impl SpiralConstruction {
    pub fn build(&self) -> Result<Ladder, SurgeryError> {
        spiral_addition(&self.base, self.site, self.m)
    }

    /// The spiral of the built ladder with the expected length and width.
    pub fn spiral(&self, l: &Ladder) -> Option<Spiral> {
        let complex = SurfaceComplex::new(l).ok()?;
        find_spirals(&complex)
            .into_iter()
            .find(|s| s.band.length == self.length && s.band.width == self.width)
    }
}

fn ladder(top: &str, bottom: &str) -> Ladder {
    Ladder::parse(&format!("{top}\n{bottom}\n")).expect("fixed ladders are valid")
}

/// Spirals of widths 1 to 5; the last has length 14 and width 5.
pub fn spiral_constructions() -> Vec<SpiralConstruction> {
    let hexa = ladder("6,2,5,1,3,4", "1,3,6,2,4,5");
    let octa = ladder("1,6,3,8,3,6,7,4", "2,7,4,1,2,5,8,5");
    let run = |start, length| AdditionSite::Run { start, length };
    vec![
        SpiralConstruction {
            name: "l10-width-1",
            base: l10(),
            site: run(0, 1),
            m: 3,
            length: 3,
            width: 1,
        },
        SpiralConstruction {
            name: "six-width-2",
            base: hexa.clone(),
            site: run(0, 2),
            m: 1,
            length: 5,
            width: 2,
        },
        SpiralConstruction {
            name: "six-width-3",
            base: hexa,
            site: run(1, 3),
            m: 1,
            length: 3,
            width: 3,
        },
        SpiralConstruction {
            name: "l10-width-4",
            base: l10(),
            site: run(0, 4),
            m: 1,
            length: 7,
            width: 4,
        },
        SpiralConstruction {
            name: "eight-width-5",
            base: octa,
            site: run(2, 5),
            m: 2,
            length: 14,
            width: 5,
        },
    ]
}
