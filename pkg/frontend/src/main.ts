import { HttpAdvisorApi } from "./api.js";
import { AdvisorModel } from "./model.js";
import { AdvisorView } from "./view.js";

const params = new URLSearchParams(window.location.search);
const baseUrl = params.get("service") ?? "http://127.0.0.1:8000";

const api = new HttpAdvisorApi(baseUrl);
const model = new AdvisorModel(api);
const root = document.getElementById("app");
if (!root) {
  throw new Error("missing #app container");
}
const view = new AdvisorView(model, root);
view.render();

void model.loadColors().then(() => model.loadPalettes().catch(() => undefined));
