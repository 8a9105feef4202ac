import { ApiClient } from "./api";
import { App } from "./app";
import "./style.css";

const apiBase = import.meta.env.VITE_API_BASE ?? "";
new App(document.getElementById("app")!, new ApiClient(apiBase));
