use super::{PermError, Permutation};

/// Parses 1-based cycle notation `(1,2,3)(4,5)` or an image list `[2,3,1]`.
///
/// Grammar: `perm := cycle* | "()"`, `cycle := "(" int ("," int)+ ")"`;
/// whitespace is ignored. Points not mentioned are fixed. An image list must
/// have exactly `degree` entries.
pub fn parse_perm(text: &str, degree: usize) -> Result<Permutation, PermError> {
    let tokens = tokenize(text)?;
    match tokens.first() {
        Some((_, Tok::LBracket)) => parse_images(&tokens, degree),
        _ => parse_cycles(&tokens, degree, text.len()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tok {
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Int(usize),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, PermError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some((pos, c)) = chars.next() {
        let tok = match c {
            c if c.is_whitespace() => continue,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            ',' => Tok::Comma,
            '0'..='9' => {
                let mut value = c.to_digit(10).unwrap() as usize;
                while let Some(&(_, d @ '0'..='9')) = chars.peek() {
                    value = value
                        .checked_mul(10)
                        .and_then(|v| v.checked_add(d.to_digit(10).unwrap() as usize))
                        .ok_or_else(|| err(pos, "integer too large"))?;
                    chars.next();
                }
                Tok::Int(value)
            }
            other => return Err(err(pos, &format!("unexpected character {other:?}"))),
        };
        out.push((pos, tok));
    }
    Ok(out)
}

fn err(position: usize, message: &str) -> PermError {
    PermError::Parse {
        position,
        message: message.to_string(),
    }
}

fn check_point(x: usize, pos: usize, degree: usize) -> Result<usize, PermError> {
    if x == 0 {
        return Err(err(pos, "points are 1-based"));
    }
    if x > degree {
        return Err(PermError::OutOfRange { point: x, degree });
    }
    Ok(x - 1)
}

fn parse_cycles(
    tokens: &[(usize, Tok)],
    degree: usize,
    end: usize,
) -> Result<Permutation, PermError> {
    if let [(_, Tok::LParen), (_, Tok::RParen)] = tokens {
        return Ok(Permutation::identity(degree));
    }
    let mut cycles = Vec::new();
    let mut used = vec![false; degree];
    let mut i = 0;
    let at = |i: usize| tokens.get(i).map_or(end, |t| t.0);
    while i < tokens.len() {
        if tokens[i].1 != Tok::LParen {
            return Err(err(at(i), "expected '('"));
        }
        i += 1;
        let mut cycle = Vec::new();
        loop {
            let Some(&(pos, Tok::Int(x))) = tokens.get(i) else {
                return Err(err(at(i), "expected a point"));
            };
            let x = check_point(x, pos, degree)?;
            if used[x] {
                return Err(PermError::RepeatedPoint { point: x + 1 });
            }
            used[x] = true;
            cycle.push(x);
            i += 1;
            match tokens.get(i) {
                Some((_, Tok::Comma)) => i += 1,
                Some((_, Tok::RParen)) => {
                    i += 1;
                    break;
                }
                _ => return Err(err(at(i), "expected ',' or ')'")),
            }
        }
        if cycle.len() < 2 {
            return Err(err(at(i - 1), "a cycle needs at least two points"));
        }
        cycles.push(cycle);
    }
    Permutation::from_cycles(degree, &cycles)
}

fn parse_images(tokens: &[(usize, Tok)], degree: usize) -> Result<Permutation, PermError> {
    let end = tokens.last().map_or(0, |t| t.0 + 1);
    let at = |i: usize| tokens.get(i).map_or(end, |t| t.0);
    let mut images = Vec::new();
    let mut i = 1;
    if let Some((_, Tok::RBracket)) = tokens.get(i) {
        i += 1;
    } else {
        loop {
            let Some(&(pos, Tok::Int(x))) = tokens.get(i) else {
                return Err(err(at(i), "expected a point"));
            };
            images.push(check_point(x, pos, degree)?);
            i += 1;
            match tokens.get(i) {
                Some((_, Tok::Comma)) => i += 1,
                Some((_, Tok::RBracket)) => {
                    i += 1;
                    break;
                }
                _ => return Err(err(at(i), "expected ',' or ']'")),
            }
        }
    }
    if i != tokens.len() {
        return Err(err(at(i), "trailing input after ']'"));
    }
    if images.len() != degree {
        return Err(err(
            0,
            &format!(
                "image list has {} entries, degree is {degree}",
                images.len()
            ),
        ));
    }
    let mut seen = vec![false; degree];
    for &x in &images {
        if seen[x] {
            return Err(PermError::RepeatedPoint { point: x + 1 });
        }
        seen[x] = true;
    }
    Ok(Permutation::from_images_unchecked(images))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_notation() {
        assert_eq!(parse_perm("(1,2)", 3).unwrap().images(), &[1, 0, 2]);
        assert!(parse_perm("()", 5).unwrap().is_identity());
        assert!(parse_perm("", 5).unwrap().is_identity());
        let g = parse_perm(" (1, 2,3) (4,5) ", 6).unwrap();
        assert_eq!(g.images(), &[1, 2, 0, 4, 3, 5]);
    }

    #[test]
    fn image_lists() {
        let g = parse_perm("[2,3,1,5,4]", 5).unwrap();
        assert_eq!(g, parse_perm("(1,2,3)(4,5)", 5).unwrap());
        assert!(parse_perm("[2,3,1]", 4).is_err());
        assert_eq!(
            parse_perm("[1,1]", 2),
            Err(PermError::RepeatedPoint { point: 1 })
        );
    }

    #[test]
    fn errors() {
        assert_eq!(
            parse_perm("(1,2)(2,3)", 3),
            Err(PermError::RepeatedPoint { point: 2 })
        );
        assert_eq!(
            parse_perm("(1,2,1)", 3),
            Err(PermError::RepeatedPoint { point: 1 })
        );
        assert_eq!(
            parse_perm("(1,4)", 3),
            Err(PermError::OutOfRange {
                point: 4,
                degree: 3
            })
        );
        assert!(matches!(
            parse_perm("(1,2", 3),
            Err(PermError::Parse { position: 4, .. })
        ));
        assert!(matches!(
            parse_perm("(1;2)", 3),
            Err(PermError::Parse { position: 2, .. })
        ));
        assert!(matches!(
            parse_perm("(0,1)", 3),
            Err(PermError::Parse { .. })
        ));
        assert!(matches!(parse_perm("(3)", 3), Err(PermError::Parse { .. })));
        assert!(matches!(
            parse_perm("()(1,2)", 3),
            Err(PermError::Parse { .. })
        ));
        assert!(matches!(
            parse_perm("1,2", 3),
            Err(PermError::Parse { position: 0, .. })
        ));
    }
}
