use crate::wordcore::WordWindow;

use super::GenError;

/// A morphism on `{0, ..., alphabet_size - 1}` given letter by letter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubstitutionSpec {
    alphabet_size: usize,
    images: Vec<Vec<u8>>,
}

impl SubstitutionSpec {
    pub fn new(images: Vec<Vec<u8>>) -> Result<Self, GenError> {
        let alphabet_size = images.len();
        if alphabet_size == 0 || alphabet_size > 256 {
            return Err(GenError::InvalidSpec(format!("bad alphabet size {alphabet_size}")));
        }
        if let Some(&l) = images.iter().flatten().find(|&&l| l as usize >= alphabet_size) {
            return Err(GenError::InvalidSpec(format!("image letter {l} outside alphabet")));
        }
        Ok(SubstitutionSpec { alphabet_size, images })
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn image(&self, letter: u8) -> &[u8] {
        &self.images[letter as usize]
    }

    pub fn images(&self) -> &[Vec<u8>] {
        &self.images
    }
}

/// Prefix of length `length` of the fixed point starting with 0.
///
/// Since `u = phi(u)`, the images of the letters already produced can be
/// appended in order; production stalls only if the morphism erases.
pub fn substitution_fixed_point(spec: &SubstitutionSpec, length: usize) -> Result<WordWindow, GenError> {
    let w = fixed_point_letters(spec, length)?;
    Ok(WordWindow::new(w, spec.alphabet_size, 0, "substitution")?)
}

pub(crate) fn fixed_point_letters(spec: &SubstitutionSpec, length: usize) -> Result<Vec<u8>, GenError> {
    let first = spec.image(0);
    if first.len() < 2 || first[0] != 0 {
        return Err(GenError::NonProlongable("image of 0 must start with 0 and have length at least 2".into()));
    }
    if length < 2 {
        return Err(GenError::InvalidSpec("length must be at least 2".into()));
    }
    let mut w = first.to_vec();
    let mut pos = 1;
    while w.len() < length {
        if pos >= w.len() {
            return Err(GenError::NonProlongable("fixed point is finite (erasing morphism)".into()));
        }
        let c = w[pos];
        w.extend_from_slice(spec.image(c));
        pos += 1;
    }
    w.truncate(length);
    Ok(w)
}
