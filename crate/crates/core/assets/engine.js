(function () {
  "use strict";
  var root = document.querySelector("svg[maidr-data]");
  if (!root) return;
  var schema;
  try {
    schema = JSON.parse(root.getAttribute("maidr-data"));
  } catch (e) {
    console.error("maidr: unreadable payload", e);
    return;
  }

  var layers = [];
  schema.subplots.forEach(function (sp) {
    sp.layers.forEach(function (layer) {
      var points = layer.type === "heatmap" ? [].concat.apply([], layer.data[0].values) : layer.data;
      layers.push({ layer: layer, points: points, elements: document.querySelectorAll(layer.selector) });
    });
  });
  if (!layers.length) return;

  var live = document.createElement("div");
  live.setAttribute("aria-live", "assertive");
  live.className = "maidr-announce";
  root.parentNode.appendChild(live);
  root.setAttribute("tabindex", "0");
  root.setAttribute("role", "application");
  root.setAttribute("aria-label", (layers[0].layer.axes.title || "chart") + ", use arrow keys to explore");

  var state = { layer: 0, point: 0, text: true };
  var lit = null;

  function describe(p) {
    if (p === null || typeof p !== "object") return String(p);
    return Object.keys(p)
      .filter(function (k) { return k !== "outliers"; })
      .map(function (k) { return k + " " + p[k]; })
      .join(", ");
  }

  function highlight(entry) {
    if (lit) lit.classList.remove("maidr-highlight");
    lit = null;
    var el = entry.elements.length === entry.points.length ? entry.elements[state.point] : entry.elements[0];
    if (el) {
      el.classList.add("maidr-highlight");
      lit = el;
    }
  }

  function update() {
    var entry = layers[state.layer];
    if (state.text) live.textContent = describe(entry.points[state.point]);
    highlight(entry);
  }

  root.addEventListener("keydown", function (ev) {
    var entry = layers[state.layer];
    switch (ev.key) {
      case "ArrowRight": state.point = Math.min(state.point + 1, entry.points.length - 1); break;
      case "ArrowLeft": state.point = Math.max(state.point - 1, 0); break;
      case "ArrowUp": state.layer = Math.min(state.layer + 1, layers.length - 1); state.point = 0; break;
      case "ArrowDown": state.layer = Math.max(state.layer - 1, 0); state.point = 0; break;
      case "t": case "T": state.text = !state.text; break;
      default: return;
    }
    ev.preventDefault();
    update();
  });

  function reportHeight() {
    if (window.parent !== window) {
      window.parent.postMessage({ maidrFrame: schema.id, height: document.documentElement.scrollHeight }, "*");
    }
  }
  window.addEventListener("load", reportHeight);
  window.addEventListener("resize", reportHeight);
})();
