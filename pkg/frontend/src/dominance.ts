/** Pairwise non-domination over (length, semantic_score) pairs, smaller is
 * better on both. The scatter asserts this before plotting: a dominated
 * point would mean the display no longer shows a skyline. */
export interface ScorePoint {
  length: number;
  semantic_score: number;
}

export function dominating(a: ScorePoint, b: ScorePoint): boolean {
  return (
    a.length <= b.length &&
    a.semantic_score <= b.semantic_score &&
    (a.length < b.length || a.semantic_score < b.semantic_score)
  );
}

export function allNonDominated(points: ScorePoint[]): boolean {
  for (let i = 0; i < points.length; i++) {
    for (let j = 0; j < points.length; j++) {
      if (i !== j && dominating(points[i], points[j])) return false;
    }
  }
  return true;
}
