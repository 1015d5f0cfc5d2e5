import { ApiClient } from "./api.js";
import { initApp } from "./main.js";

window.addEventListener("DOMContentLoaded", () => {
  void initApp(document, new ApiClient(""));
});
