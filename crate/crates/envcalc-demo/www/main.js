import init, { conjugate, hull, findings, preset } from "./pkg/envcalc_demo.js";

const $ = (id) => document.getElementById(id);

const LOCAL = {
  abs: {
    kind: "pl-convex-1d",
    breakpoints: ["-2", "0", "3"],
    values: ["3", "1", "4"],
    left_slope: "-inf",
    right_slope: "inf",
  },
  wells: {
    kind: "grid",
    dim: 1,
    points: [[-2], [-1.5], [-1], [-0.5], [0], [0.5], [1], [1.5], [2]],
    values: [2, 0.5, 0, 0.6, 1.2, 0.4, 0.1, 0.9, 2.5],
  },
};

function loadPreset() {
  const name = $("preset").value;
  const text = LOCAL[name] ? JSON.stringify(LOCAL[name]) : preset(name);
  $("instance").value = JSON.stringify(JSON.parse(text), null, 1);
  plot();
}

function bounds(series) {
  const vs = series.flat().filter((v) => v !== null && Number.isFinite(v));
  if (vs.length === 0) return [-1, 1];
  let lo = Math.min(...vs), hi = Math.max(...vs);
  if (hi - lo < 1e-9) { lo -= 1; hi += 1; }
  const pad = 0.08 * (hi - lo);
  return [lo - pad, hi + pad];
}

function draw(data) {
  const c = $("plot"), g = c.getContext("2d");
  const W = c.width, H = c.height, m = 50;
  g.clearRect(0, 0, W, H);
  const xs = data.x, x0 = xs[0], x1 = xs[xs.length - 1];
  const [y0, y1] = bounds([data.f, data.out]);
  const sx = (x) => m + ((x - x0) / (x1 - x0)) * (W - 2 * m);
  const sy = (y) => H - m - ((y - y0) / (y1 - y0)) * (H - 2 * m);

  g.strokeStyle = "#999"; g.lineWidth = 1; g.font = "22px sans-serif"; g.fillStyle = "#555";
  g.beginPath();
  if (y0 < 0 && y1 > 0) { g.moveTo(m, sy(0)); g.lineTo(W - m, sy(0)); }
  if (x0 < 0 && x1 > 0) { g.moveTo(sx(0), m); g.lineTo(sx(0), H - m); }
  g.stroke();
  g.fillText(x0.toString(), m, H - 12);
  g.fillText(x1.toString(), W - m - 30, H - 12);
  g.fillText(y1.toFixed(2), 4, m);
  g.fillText(y0.toFixed(2), 4, H - m);

  const line = (px, ys, color, width) => {
    g.strokeStyle = color; g.lineWidth = width;
    g.beginPath();
    let open = false;
    ys.forEach((y, i) => {
      if (y === null) { open = false; return; }
      if (open) g.lineTo(sx(px[i]), sy(y)); else g.moveTo(sx(px[i]), sy(y));
      open = true;
    });
    g.stroke();
  };
  line(xs, data.f, "#1f5fbf", 5);
  line(data.y, data.out, "#d0601a", 3);
}

function plot() {
  $("error").textContent = "";
  const op = document.querySelector("input[name=op]:checked").value;
  $("outname").textContent = op === "conjugate" ? "f*" : "cl conv f";
  try {
    const args = [$("instance").value, +$("lo").value, +$("hi").value, +$("n").value];
    draw(JSON.parse(op === "conjugate" ? conjugate(...args) : hull(...args)));
  } catch (e) {
    $("error").textContent = String(e);
  }
}

function check() {
  const t = $("findings");
  t.innerHTML = "<tr><th></th><th>claim</th><th>expected</th><th>observed</th><th>detail</th></tr>";
  try {
    for (const r of JSON.parse(findings($("entry").value))) {
      const row = t.insertRow();
      const mark = row.insertCell();
      mark.textContent = r.ok ? "PASS" : "FAIL";
      mark.className = r.ok ? "ok" : "bad";
      for (const v of [r.claim, r.expected, r.observed, r.detail]) row.insertCell().textContent = String(v);
    }
  } catch (e) {
    $("error").textContent = String(e);
  }
}

await init();
$("preset").addEventListener("change", loadPreset);
$("run").addEventListener("click", plot);
for (const r of document.querySelectorAll("input[name=op]")) r.addEventListener("change", plot);
$("check").addEventListener("click", check);
loadPreset();
