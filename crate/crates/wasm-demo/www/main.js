import init, { polynomial, cwdp, maxcut } from "./pkg/ising_wasm_demo.js";

const $ = (id) => document.getElementById(id);

function show(out, f) {
  out.classList.remove("err");
  try {
    out.textContent = f();
  } catch (e) {
    out.classList.add("err");
    out.textContent = String(e.message ?? e);
  }
}

await init();

for (const b of document.querySelectorAll("[data-preset]")) {
  b.addEventListener("click", () => { $("graph").value = b.dataset.preset; });
}

$("run-poly").addEventListener("click", () => show($("poly-out"), () => {
  const r = JSON.parse(polynomial($("graph").value, $("bivariate").checked));
  return `n = ${r.n}, m = ${r.m}\n\n${r.text}`;
}));

$("run-maxcut").addEventListener("click", () => show($("poly-out"), () => {
  const r = JSON.parse(maxcut($("graph").value));
  return `maximum cut ${r.maxcut}, attained by ${r.count} vertex subsets`;
}));

$("run-cwdp").addEventListener("click", () => show($("cwdp-out"), () => {
  const r = JSON.parse(cwdp($("kexpr").value));
  const edges = r.graph.edges.map(([u, v]) => `${u}-${v}`).join(" ");
  return `width ${r.width}, ${r.graph.n} vertices, table rows ${r.table_rows}\nedges: ${edges}\n\n${r.text}`;
}));
