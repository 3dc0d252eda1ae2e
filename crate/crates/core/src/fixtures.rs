//! Polynomial data bundled with the crate, stored as `coef:monomial` term
//! lists. Every file is pinned by a SHA-256 digest so that an accidental edit
//! is reported before the data is used.

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::seriesalg::mpoly::parse_term_file;
use crate::seriesalg::MPoly;

#[derive(Debug, Clone, Copy)]
pub struct Fixture {
    pub name: &'static str,
    pub description: &'static str,
    pub contents: &'static str,
    pub sha256: &'static str,
}

macro_rules! fixture {
    ($ident:ident, $file:literal, $desc:literal, $sha:literal) => {
        pub const $ident: Fixture = Fixture {
            name: $file,
            description: $desc,
            contents: include_str!(concat!("../fixtures/", $file)),
            sha256: $sha,
        };
    };
}

fixture!(
    CLASS_A_F1,
    "class_a_f1.poly",
    "minimal polynomial of F = f(z,1) for Av(2413,3412)",
    "6deaeea6e8a500085da35e81e30fa284d0186fd272a4f8428a3e832a47a28ec4"
);
fixture!(
    CLASS_A_SKEW_AT_F1,
    "class_a_skew_at_f1.poly",
    "minimal polynomial of G = fskew(z, f(z,1)) for Av(2413,3412)",
    "7d8143dacb17bd78f87ed9705e930c4bf95ebd01b097c5ad76e614b71ca4c835"
);
fixture!(
    CLASS_B_F1,
    "class_b_f1.poly",
    "degree-8 minimal polynomial of F = f(z,1) for Av(1432,2143)",
    "70cdae8fc630ecf1325287e4106e5c327eb8979a164c3adb7089b6324d160ec0"
);
fixture!(
    CLASS_B_GROWTH,
    "class_b_growth.poly",
    "quartic whose real root near 5.63 is the growth rate of Av(1432,2143)",
    "6d4848df7505179d9be331f2ba4cb5ccf8fad174933a0203ba11708d8664a384"
);
fixture!(
    KERNEL,
    "kernel.poly",
    "kernel K(z,t) of the Av(1432,2143) functional equation",
    "d6dd96c20231bf3aea731f50d191ae6f3dbc7648bc0cf8d72db2b8885624f61e"
);
fixture!(
    KERNEL_M1,
    "kernel_m1.poly",
    "factor m1 of the kernel (power-series root t1 with t1(0) = 1)",
    "e0b471fdaf72419773687801a0a7c9f21182f2a6cea69348b08dfc224deab981"
);
fixture!(
    KERNEL_M2,
    "kernel_m2.poly",
    "factor m2 of the kernel (fractional roots t2, t3)",
    "748326ba8f8e3873b1b33c25f53fbfb85f1c299e33014500468cfc7d9fe34c70"
);

/// The class-A minimal polynomial for F(z) coincides with the one guessed
/// for f(z,1).
pub const CLASS_A_MINPOLY: Fixture = CLASS_A_F1;

pub const ALL: [Fixture; 7] =
    [CLASS_A_F1, CLASS_A_SKEW_AT_F1, CLASS_B_F1, CLASS_B_GROWTH, KERNEL, KERNEL_M1, KERNEL_M2];

pub fn sha256_hex(data: &[u8]) -> String {
    Sha256::digest(data).iter().map(|b| format!("{b:02x}")).collect()
}

impl Fixture {
    pub fn verify_checksum(&self) -> Result<()> {
        let got = sha256_hex(self.contents.as_bytes());
        if got != self.sha256 {
            return Err(Error::Consistency(format!(
                "fixture {} has checksum {got}, expected {}",
                self.name, self.sha256
            )));
        }
        Ok(())
    }

    pub fn poly(&self) -> Result<MPoly> {
        self.verify_checksum()?;
        parse_term_file(self.contents)
    }
}

pub fn by_name(name: &str) -> Option<Fixture> {
    let stem = name.trim_end_matches(".poly");
    ALL.into_iter().find(|f| f.name.trim_end_matches(".poly") == stem)
}
