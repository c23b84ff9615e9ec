import init, { lattice, family, pair } from "./pkg/fca_web.js";

const $ = (id) => document.getElementById(id);
const SVG = "http://www.w3.org/2000/svg";

function showError(e) {
  $("error").textContent = e ? String(e) : "";
}

function svgEl(tag, attrs, text) {
  const el = document.createElementNS(SVG, tag);
  for (const [k, v] of Object.entries(attrs)) el.setAttribute(k, v);
  if (text !== undefined) el.textContent = text;
  return el;
}

// Nodes share a row per level; within a row they are ordered by the mean
// x position of their lower covers.
function layout(data, width, height) {
  const levels = [];
  data.concepts.forEach((c, i) => (levels[c.level] ??= []).push(i));
  const below = data.concepts.map(() => []);
  for (const [l, u] of data.edges) below[u].push(l);
  const pos = [];
  const rowHeight = (height - 60) / Math.max(1, levels.length - 1);
  levels.forEach((row, level) => {
    const key = (i) =>
      below[i].length ? below[i].reduce((s, l) => s + pos[l].x, 0) / below[i].length : i;
    row.sort((p, q) => key(p) - key(q));
    row.forEach((i, j) => {
      pos[i] = { x: ((j + 1) * width) / (row.length + 1), y: height - 30 - level * rowHeight };
    });
  });
  return pos;
}

function drawLattice(text) {
  const data = JSON.parse(lattice(text));
  const svg = $("lattice");
  svg.replaceChildren();
  const pos = layout(data, +svg.getAttribute("width"), +svg.getAttribute("height"));
  for (const [l, u] of data.edges) {
    svg.append(svgEl("line", { class: "edge", x1: pos[l].x, y1: pos[l].y, x2: pos[u].x, y2: pos[u].y }));
  }
  data.concepts.forEach((c, i) => {
    const { x, y } = pos[i];
    const node = svgEl("circle", { class: "node", cx: x, cy: y, r: 6 });
    node.append(svgEl("title", {}, `{${c.extent.join(", ")}} {${c.intent.join(", ")}}`));
    svg.append(node);
    if (c.attributes.length) {
      svg.append(svgEl("text", { class: "attr", x: x + 8, y: y - 6 }, c.attributes.join(", ")));
    }
    if (c.objects.length) {
      svg.append(svgEl("text", { class: "obj", x: x + 8, y: y + 16 }, c.objects.join(", ")));
    }
  });
  $("lattice-info").textContent = `${data.concepts.length} concepts, ${data.edges.length} edges`;
}

function fillTable(table, rows) {
  table.replaceChildren();
  for (const [label, value] of rows) {
    const tr = document.createElement("tr");
    const th = document.createElement("th");
    th.textContent = label;
    const td = document.createElement("td");
    td.textContent = value;
    tr.append(th, td);
    table.append(tr);
  }
}

function guarded(fn) {
  return () => {
    try {
      showError();
      fn();
    } catch (e) {
      showError(e);
    }
  };
}

await init();

$("draw").onclick = guarded(() => drawLattice($("cxt").value));

$("analyze").onclick = guarded(() => {
  const r = JSON.parse(pair($("cxt").value, $("pair-a").value, $("pair-b").value));
  fillTable($("pair"), [
    ["concepts without a, b", r.concepts_without_pair],
    ["concepts with a, b", r.concepts_with_pair],
    ["concepts after merging", r.concepts_merged],
    ...r.values,
  ]);
});

$("family").onclick = guarded(() => {
  const r = JSON.parse(family(+$("fam-n").value, +$("fam-k").value));
  fillTable($("family-table"), [
    ["concepts", `${r.initial} (predicted ${r.predicted.initial})`],
    ["after merging m1, m2", `${r.generalized} (predicted ${r.predicted.generalized})`],
    ["increase", `${r.increase} (predicted ${r.predicted.increase})`],
    [`largest increase for n = ${r.n}`, `${r.best_increase} at k = ${r.best_k.join(" or ")}`],
  ]);
});

$("family-load").onclick = guarded(() => {
  const r = JSON.parse(family(+$("fam-n").value, +$("fam-k").value));
  $("cxt").value = r.cxt;
  $("pair-a").value = "m1";
  $("pair-b").value = "m2";
  drawLattice(r.cxt);
});

guarded(() => drawLattice($("cxt").value))();
