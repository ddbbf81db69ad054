// Static driver for the wasm demo. Build the module first:
//   wasm-pack build crates/web --target web --out-dir www/pkg
// then serve this directory.

import init, {
  inequality_curve,
  run_report,
  w_state_histogram,
  fusion_demo,
} from "./pkg/wfsim_web.js";

const $ = (id) => document.getElementById(id);
const status = (msg) => { $("status").textContent = msg || ""; };

const SLIDER_MAX = 128; // slider units are pi/128
let curve = null;
let lastReport = null;

function sliderTheta() {
  return (Math.PI * Number($("theta-slider").value)) / SLIDER_MAX;
}

function thetaLabel() {
  const v = Number($("theta-slider").value);
  const g = gcd(v, SLIDER_MAX);
  if (v === 0) return "0";
  const num = v / g, den = SLIDER_MAX / g;
  return den === 1 ? `${num === 1 ? "" : num}π` : `${num === 1 ? "" : num}π/${den}`;
}

function gcd(a, b) { return b ? gcd(b, a % b) : a; }

function drawCurve() {
  const canvas = $("curve");
  const ctx = canvas.getContext("2d");
  const { width: W, height: H } = canvas;
  ctx.clearRect(0, 0, W, H);
  const pad = { l: 48, r: 14, t: 12, b: 28 };
  const x = (theta) => pad.l + ((W - pad.l - pad.r) * theta) / Math.PI;
  const y = (i) => H - pad.b - ((H - pad.t - pad.b) * i) / 1.6;

  // axes and reference lines
  ctx.strokeStyle = "#c6cfd8";
  ctx.beginPath();
  ctx.moveTo(pad.l, y(0)); ctx.lineTo(W - pad.r, y(0));
  ctx.moveTo(pad.l, pad.t); ctx.lineTo(pad.l, y(0));
  ctx.stroke();
  ctx.font = "12px sans-serif";
  ctx.fillStyle = "#5d6b78";
  for (const [level, label, color] of [[1.0, "classical bound 1", "#b2483f"], [1.5, "quantum max 1.5", "#2e7d4f"]]) {
    ctx.strokeStyle = color;
    ctx.setLineDash([5, 4]);
    ctx.beginPath(); ctx.moveTo(pad.l, y(level)); ctx.lineTo(W - pad.r, y(level)); ctx.stroke();
    ctx.setLineDash([]);
    ctx.fillStyle = color;
    ctx.fillText(label, pad.l + 6, y(level) - 4);
  }
  ctx.fillStyle = "#5d6b78";
  for (const [t, label] of [[0, "0"], [Math.PI / 4, "π/4"], [Math.PI / 2, "π/2"], [(3 * Math.PI) / 4, "3π/4"], [Math.PI, "π"]]) {
    ctx.fillText(label, x(t) - 8, H - 8);
  }
  for (const v of [0.5, 1.0, 1.5]) ctx.fillText(v.toFixed(1), 14, y(v) + 4);

  // the curve itself
  ctx.strokeStyle = "#347fad";
  ctx.lineWidth = 2;
  ctx.beginPath();
  curve.samples.forEach((s, i) => {
    if (i === 0) ctx.moveTo(x(s.theta), y(s.i)); else ctx.lineTo(x(s.theta), y(s.i));
  });
  ctx.stroke();
  ctx.lineWidth = 1;

  // marker at the selected theta
  const theta = sliderTheta();
  ctx.strokeStyle = "#1c2733";
  ctx.setLineDash([2, 3]);
  ctx.beginPath(); ctx.moveTo(x(theta), pad.t); ctx.lineTo(x(theta), y(0)); ctx.stroke();
  ctx.setLineDash([]);

  // sampled point from the last run, if any
  if (lastReport && !lastReport.error) {
    ctx.fillStyle = "#b2483f";
    ctx.beginPath();
    ctx.arc(x(lastReport.theta), y(lastReport.i_value), 4, 0, 2 * Math.PI);
    ctx.fill();
  }
}

function drawBars(canvas, entries, { min = 0, max = 1, color = "#347fad", reference = null } = {}) {
  const ctx = canvas.getContext("2d");
  const { width: W, height: H } = canvas;
  ctx.clearRect(0, 0, W, H);
  const pad = { l: 34, r: 8, t: 10, b: 30 };
  const span = max - min;
  const y = (v) => H - pad.b - ((H - pad.t - pad.b) * (v - min)) / span;
  const bw = (W - pad.l - pad.r) / entries.length;
  ctx.font = "11px sans-serif";

  ctx.strokeStyle = "#c6cfd8";
  ctx.beginPath(); ctx.moveTo(pad.l, y(0)); ctx.lineTo(W - pad.r, y(0)); ctx.stroke();

  entries.forEach((e, i) => {
    const cx = pad.l + bw * i;
    if (reference !== null && e.reference !== undefined) {
      ctx.fillStyle = "#d9e4ec";
      ctx.fillRect(cx + bw * 0.12, Math.min(y(0), y(e.reference)), bw * 0.76, Math.abs(y(e.reference) - y(0)));
    }
    ctx.fillStyle = color;
    ctx.fillRect(cx + bw * 0.24, Math.min(y(0), y(e.value)), bw * 0.52, Math.abs(y(e.value) - y(0)));
    ctx.fillStyle = "#3a4754";
    ctx.save();
    ctx.translate(cx + bw / 2, H - 4);
    ctx.textAlign = "center";
    ctx.fillText(e.label, 0, 0);
    ctx.restore();
  });
  ctx.fillStyle = "#5d6b78";
  ctx.fillText(max.toFixed(1), 6, y(max) + 4);
  if (min < 0) ctx.fillText(min.toFixed(1), 2, y(min));
}

function renderReport(report) {
  lastReport = report;
  if (report.error) { status(report.error); return; }
  status("");
  const badge = $("i-badge");
  const sigma = report.sigma_i > 0 ? ` ± ${report.sigma_i.toFixed(4)}` : "";
  badge.textContent = `I = ${report.i_value.toFixed(4)}${sigma}`;
  badge.classList.toggle("violated", report.violated);

  drawBars(
    $("correlators"),
    report.correlators.map((c) => ({ label: c.setting, value: c.e })),
    { min: -1, max: 1 }
  );

  const holder = $("counts-table");
  if (!report.counts) { holder.innerHTML = ""; drawCurve(); return; }
  const cols = ["+++", "++-", "+-+", "+--", "-++", "-+-", "--+", "---"];
  let html = "<table><tr><th>setting</th>" + cols.map((c) => `<th>${c}</th>`).join("") +
    "<th>valid</th><th>E</th><th>&sigma;<sub>E</sub></th></tr>";
  report.counts.forEach((row, i) => {
    const corr = report.correlators[i];
    html += `<tr><td>${row.setting}</td>` +
      row.counts.map((c) => `<td>${c}</td>`).join("") +
      `<td>${row.valid_shots}</td><td>${corr.e.toFixed(4)}</td><td>${corr.sigma_e.toFixed(4)}</td></tr>`;
  });
  holder.innerHTML = html + "</table>";
  drawCurve();
}

function renderHistogram(canvas, doc) {
  if (doc.error) { status(doc.error); return; }
  const bins = doc.bins.filter((b) => b.analytic > 1e-9 || b.count > 0);
  drawBars(
    canvas,
    bins.map((b) => ({ label: b.bits, value: b.frequency, reference: b.analytic })),
    { min: 0, max: 0.55, reference: true }
  );
}

function run() {
  const theta = sliderTheta();
  const shots = Math.max(1, Number($("shots").value) | 0);
  const seed = BigInt(Math.max(0, Number($("seed").value) | 0));
  const report = JSON.parse(
    run_report(theta, shots, seed, $("analytic").checked, $("method").value)
  );
  renderReport(report);
}

async function main() {
  await init();
  curve = JSON.parse(inequality_curve(257));
  $("theta-label").textContent = thetaLabel();
  drawCurve();

  $("theta-slider").addEventListener("input", () => {
    $("theta-label").textContent = thetaLabel();
    drawCurve();
  });
  $("run").addEventListener("click", run);
  $("run-w").addEventListener("click", () => {
    const seed = BigInt(Math.max(0, Number($("seed").value) | 0));
    renderHistogram($("w-hist"), JSON.parse(w_state_histogram($("method").value, 8192, seed)));
  });
  $("run-fusion").addEventListener("click", () => {
    const seed = BigInt(Math.max(0, Number($("seed").value) | 0));
    const doc = JSON.parse(fusion_demo(8192, seed));
    if (!doc.error) {
      $("fusion-ratio").textContent =
        `kept ${doc.valid_shots} of ${doc.attempted_shots} (ratio ${doc.success_ratio.toFixed(3)})`;
    }
    renderHistogram($("fusion-hist"), doc);
  });

  run();
}

main().catch((e) => status(`failed to load wasm module: ${e}`));
