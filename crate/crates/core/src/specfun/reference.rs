//! Frozen reference values for the gamma-family functions.
//!
//! `HighPrecision` entries were evaluated with 40-digit arithmetic and
//! rounded to 18 significant digits.

#![allow(clippy::excessive_precision)]

/// Where a reference value came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    /// A closed-form identity such as Γ(1/2) = √π.
    Identity,
    /// An independent high-precision evaluation.
    HighPrecision,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReferenceValue {
    pub argument: f64,
    pub value: f64,
    pub source: Source,
}

const fn rv(argument: f64, value: f64) -> ReferenceValue {
    ReferenceValue {
        argument,
        value,
        source: Source::HighPrecision,
    }
}

const fn id(argument: f64, value: f64) -> ReferenceValue {
    ReferenceValue {
        argument,
        value,
        source: Source::Identity,
    }
}

pub const LOG_GAMMA: &[ReferenceValue] = &[
    id(1.0, 0.0),
    id(2.0, 0.0),
    id(5.0, 3.178_053_830_347_945_7),
    rv(0.5, 0.572364942924700087),
    rv(0.75, 0.203280951431295371),
    rv(1.5, -0.120782237635245222),
    rv(2.5, 0.28468287047291916),
    rv(3.7, 1.42807232666538792),
    rv(7.25, 7.05218545073853944),
    rv(12.5, 18.7343475119364457),
    rv(41.5, 112.174377043177878),
    rv(100.5, 361.435540467777622),
    rv(1000.0, 5905.22042320918121),
    rv(123456.5, 1323898.63066273704),
];

pub const DIGAMMA: &[ReferenceValue] = &[
    id(1.0, -0.577_215_664_901_532_9),
    id(2.0, 0.422_784_335_098_467_1),
    rv(0.5, -1.96351002602142348),
    rv(0.75, -1.08586087978647217),
    rv(1.5, 0.0364899739785765206),
    rv(2.5, 0.703156640645243187),
    rv(3.7, 1.16715353936151139),
    rv(7.25, 1.91045352688373603),
    rv(12.5, 2.48519565127491205),
    rv(41.5, 3.71359685095792494),
    rv(100.5, 4.60517435258184521),
    rv(1000.0, 6.90725519564881205),
    rv(123456.5, 11.7236400962681347),
];

pub const TRIGAMMA: &[ReferenceValue] = &[
    id(1.0, std::f64::consts::PI * std::f64::consts::PI / 6.0),
    rv(0.5, 4.93480220054467931),
    rv(0.75, 2.5418796476716065),
    rv(1.5, 0.934802200544679309),
    rv(2.5, 0.490357756100234865),
    rv(3.7, 0.310037857670038319),
    rv(7.25, 0.14787923315893217),
    rv(12.5, 0.0832852246015783704),
    rv(41.5, 0.024389035040253251),
    rv(100.5, 0.00999991666958310271),
    rv(1000.0, 0.00100050016666663333),
    rv(123456.5, 0.00000810005184028749052),
];
