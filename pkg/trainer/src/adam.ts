/** Adam over the per-layer weight matrices. */

import type { Matrix } from "./matrix.js";
import { zeros } from "./matrix.js";
import type { GcnWeights } from "./weights.js";
import { zeroLike } from "./weights.js";

export interface AdamConfig {
  lr: number;
  beta1: number;
  beta2: number;
  eps: number;
}

export const DEFAULT_ADAM: AdamConfig = { lr: 0.001, beta1: 0.9, beta2: 0.999, eps: 1e-8 };

export class Adam {
  private readonly cfg: AdamConfig;
  private readonly m: GcnWeights;
  private readonly v: GcnWeights;
  private step = 0;

  constructor(template: GcnWeights, cfg: Partial<AdamConfig> = {}) {
    this.cfg = { ...DEFAULT_ADAM, ...cfg };
    this.m = zeroLike(template);
    this.v = zeroLike(template);
  }

  private updateMatrix(param: Matrix, grad: Matrix, m: Matrix, v: Matrix): void {
    const { lr, beta1, beta2, eps } = this.cfg;
    const correction1 = 1 - Math.pow(beta1, this.step);
    const correction2 = 1 - Math.pow(beta2, this.step);
    for (let i = 0; i < param.data.length; i++) {
      const g = grad.data[i];
      m.data[i] = beta1 * m.data[i] + (1 - beta1) * g;
      v.data[i] = beta2 * v.data[i] + (1 - beta2) * g * g;
      const mhat = m.data[i] / correction1;
      const vhat = v.data[i] / correction2;
      param.data[i] -= (lr * mhat) / (Math.sqrt(vhat) + eps);
    }
  }

  update(weights: GcnWeights, grads: GcnWeights): void {
    this.step++;
    weights.layers.forEach((layer, l) => {
      this.updateMatrix(layer.theta0, grads.layers[l].theta0, this.m.layers[l].theta0, this.v.layers[l].theta0);
      this.updateMatrix(layer.theta1, grads.layers[l].theta1, this.m.layers[l].theta1, this.v.layers[l].theta1);
    });
  }
}
