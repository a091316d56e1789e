/** Closed-form reference curves drawn on top of the measured data. */

export function groverAngle(L: number): number {
  return Math.asin(Math.pow(2, -L / 2));
}

/** Effective-Hamiltonian energy scale, E0^2 = (2L^2 + 10L + 5)/8. */
export function e0ClosedForm(L: number): number {
  return Math.sqrt((2 * L * L + 10 * L + 5) / 8);
}

export function noiselessTargetProbability(t: number, L: number): number {
  const s = Math.sin((2 * t + 1) * groverAngle(L));
  return s * s;
}

/** Zero-mean Gaussian density with standard deviation e0. */
export function gaussianDensity(x: number, e0: number): number {
  return Math.exp(-(x * x) / (2 * e0 * e0)) / (e0 * Math.sqrt(2 * Math.PI));
}

/** Wigner semicircle with matched variance e0^2 (radius 2 e0). */
export function semicircleDensity(x: number, e0: number): number {
  const r = 2 * e0;
  if (Math.abs(x) >= r) return 0;
  return (2 / (Math.PI * r * r)) * Math.sqrt(r * r - x * x);
}
