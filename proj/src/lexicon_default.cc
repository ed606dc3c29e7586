// Copyright 2026 The cibnet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Built-in stand-in lexicon for the socio-linguistic scorer. Weights are
// hand-set; the list is deliberately small and only meant to exercise the
// pipeline end to end.

namespace cibnet {

extern const char kDefaultLexiconCsv[];

const char kDefaultLexiconCsv[] = R"csv(characteristic,phrase,weight,language
vote_for,votez,0.8,fr
vote_for,je vote,0.7,fr
vote_for,votons,0.7,fr
vote_for,vote for,0.8,en
vote_for,support,0.4,en
vote_for,soutien,0.4,fr
vote_against,ne votez pas,0.9,fr
vote_against,tout sauf,0.7,fr
vote_against,barrage,0.6,fr
vote_against,don't vote,0.9,en
vote_against,never vote,0.8,en
moral,honnête,0.6,fr
moral,intègre,0.6,fr
moral,honest,0.6,en
moral,justice,0.4,
immoral,corrompu,0.8,fr
immoral,corruption,0.7,
immoral,menteur,0.7,fr
immoral,scandale,0.6,fr
immoral,corrupt,0.8,en
immoral,liar,0.7,en
economy,économie,0.8,fr
economy,chômage,0.8,fr
economy,emploi,0.6,fr
economy,impôts,0.7,fr
economy,economy,0.8,en
economy,jobs,0.6,en
economy,taxes,0.6,en
terrorism,terrorisme,0.9,fr
terrorism,attentat,0.8,fr
terrorism,terrorist,0.9,en
terrorism,terrorism,0.9,en
religion,islam,0.7,
religion,laïcité,0.8,fr
religion,église,0.6,fr
religion,religion,0.8,
immigration,immigration,0.9,
immigration,migrants,0.8,
immigration,frontières,0.6,fr
immigration,borders,0.6,en
international_alliances,otan,0.8,fr
international_alliances,nato,0.8,en
international_alliances,union européenne,0.7,fr
international_alliances,frexit,0.8,
international_alliances,europe,0.4,
russia_relations,russie,0.8,fr
russia_relations,russia,0.8,en
russia_relations,poutine,0.8,fr
russia_relations,putin,0.8,en
russia_relations,kremlin,0.7,
national_identity,identité nationale,0.9,fr
national_identity,patriote,0.6,fr
national_identity,patriots,0.6,en
national_identity,national identity,0.9,en
environment,climat,0.8,fr
environment,écologie,0.8,fr
environment,climate,0.8,en
environment,nucléaire,0.5,fr
misinformation,fake news,0.9,
misinformation,désinformation,0.9,fr
misinformation,intox,0.6,fr
misinformation,hoax,0.7,en
misinformation,leaks,0.4,
democracy,démocratie,0.8,fr
democracy,democracy,0.8,en
democracy,élection,0.4,fr
democracy,referendum,0.5,
anger_hate,honte,0.5,fr
anger_hate,haine,0.8,fr
anger_hate,hate,0.8,en
anger_hate,dégoût,0.7,fr
anger_hate,disgusting,0.7,en
embarrassment_shame,triste,0.6,fr
embarrassment_shame,sad,0.6,en
embarrassment_shame,shame,0.7,en
embarrassment_shame,gênant,0.6,fr
admiration_love,bravo,0.7,
admiration_love,merci,0.5,fr
admiration_love,love,0.7,en
admiration_love,admire,0.7,
optimism_hope,espoir,0.8,fr
optimism_hope,avenir,0.5,fr
optimism_hope,hope,0.8,en
optimism_hope,ensemble,0.4,fr
joy_happiness,heureux,0.7,fr
joy_happiness,joie,0.8,fr
joy_happiness,happy,0.7,en
joy_happiness,victoire,0.5,fr
pride_national,fier,0.7,fr
pride_national,fierté,0.8,fr
pride_national,vive la france,0.9,fr
pride_national,proud,0.7,en
fear_pessimism,peur,0.8,fr
fear_pessimism,danger,0.6,
fear_pessimism,fear,0.8,en
fear_pessimism,catastrophe,0.6,
amusement,mdr,0.8,fr
amusement,lol,0.8,
amusement,haha,0.7,
amusement,ptdr,0.8,fr
positive_other,super,0.5,
positive_other,génial,0.6,fr
positive_other,great,0.5,en
negative_other,nul,0.5,fr
negative_other,pathétique,0.6,fr
negative_other,terrible,0.5,
negative_other,awful,0.6,en
)csv";

}  // namespace cibnet
