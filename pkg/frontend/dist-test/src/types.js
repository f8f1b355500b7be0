/** Payload shapes of the splboard curation API, mirrored verbatim. */
export {};
