#pragma once

// Generated by tools/embed_lexicon.py from data/lexicon.tsv. Do not edit.

#include <string_view>

namespace trustlens::detail {

inline constexpr std::string_view kBundledLexicon =
    R"TLX(#version	trustlens-en-1
# token<TAB>weight in [-1,1]; #negator<TAB>token marks a negator
# weights: per-word mean polarity over senses of the PDDL-licensed pattern/TextBlob English adjective lexicon, zero-mean words dropped
#negator	not
#negator	no
#negator	never
#negator	nor
#negator	neither
#negator	cannot
#negator	cant
#negator	dont
#negator	doesnt
#negator	didnt
#negator	isnt
#negator	wasnt
#negator	arent
#negator	werent
#negator	wont
#negator	wouldnt
#negator	shouldnt
#negator	couldnt
#negator	hasnt
#negator	havent
#negator	hadnt
#negator	aint
#negator	nothing
#negator	nobody
#negator	without
abhorrent	-0.7
able	0.5
abridged	0.1
abrupt	-0.125
absence	-0.0125
absolute	0.2
absorbed	0.3
absorbing	0.2
absurd	-0.5
abundant	0.6
accessible	0.375
accomplished	0.2
accurate	0.4
acquainted	0.5
action	0.1
active	-0.1333
acuate	0.1
acute	0.6
adamant	0.1
addicted	-0.4
addled	-0.4667
adept	0.6
adequate	0.3333
adjectival	0.1
adorable	0.5
adoring	0.2
adult	0.1
advanced	0.4
adventurous	0.5
adversative	-0.1
advertent	0.5
aeriform	-0.25
affable	0.8
affirmative	0.6
affluent	0.65
afraid	-0.6
aged	-0.1
aghast	-0.6
agile	0.5
agitative	-0.6
ahw	0.3
aired	0.1
airheaded	0.5
alarming	-0.1
alas	-0.4
alcoholic	-0.25
algid	-0.4
alien	-0.25
alienating	-0.3
alive	0.1
alleged	-0.1
alleviated	0.5
allusions	-0.1
amateur	-0.25
amateurish	-0.4
amatory	0.1
amazing	0.6
ambitious	0.25
amenable	0.2
amusing	0.6
anger	-0.7
angered	-0.75
angry	-0.5
annoyed	-0.4
annoying	-0.8
anxious	-0.25
aphonic	-0.1
appalled	-0.8
appalling	-0.35
apparent	0.05
appealing	0.5
appetizing	0.2
applaudable	0.7
applicative	0.4
apportioned	0.3
apposite	0.4
appreciated	0.2
appreciative	0.6
appropriate	0.5
approximate	-0.4
apt	0.6
arbitrary	-0.1
arduous	-0.35
aroused	0.1
arrest	-0.05
artesian	0.9
artificial	-0.6
artistic	0.3333
ascetic	-0.5
ashen	-0.5
askew	-0.1
assumptive	-0.5
astonishing	0.5
astounding	0.6
astute	0.55
atrocious	-0.7
attendant	0.2
attentive	0.4
attractive	0.8
aureate	0.2
authentic	0.5
authoritative	0.3
autistic	-0.2
autonomous	0.4
available	0.4
average	-0.15
avid	0.25
aware	0.25
aweary	-0.5
awesome	1.0
awful	-1.0
awkward	-0.6
aww	0.3
awww	0.4
awwww	0.5
bad	-0.7
badness	-0.3
balmy	0.1
banal	-0.3
barbarian	-0.7
bare	0.05
base	-0.8
bass	-0.15
battleful	-0.6
beautiful	0.85
becoming	0.45
beefy	0.2
behind	-0.4
believable	0.5
beloved	0.7
best	1.0
better	0.5
bewitching	0.7
bitter	-0.1
bizarre	0.4
black	-0.1667
bland	-0.1667
blasted	-0.6
blatant	-0.5
bleak	-1.0
blech	-0.8
blind	-0.5
bloodstained	-0.6
bloodthirsty	-0.5
bloody	-0.8
bogged	-0.2
boilerplate	-0.1
bold	0.3333
bonny	0.3
bootleg	-0.4
bored	-0.5
boring	-1.0
boundless	-0.2
brainsick	-0.5
brash	-0.2
bravado	-0.2
brave	0.8
breathtaking	1.0
bright	0.7
brilliant	0.9
broad	0.0625
broken	-0.4
brutal	-0.875
budding	0.1
busy	0.1
cacophonous	-0.4
calculable	-0.5
calm	0.3
candid	0.6
capable	0.2
captivating	0.5
captive	0.2
cardiac	-0.05
careful	-0.1
careless	-0.5
casual	-0.5
catching	0.6
caustic	-0.4
ceaseless	-0.1
celebrated	0.35
center	-0.1
ceremonial	0.05
certain	0.2143
challenging	0.5
changeless	-0.05
characteristic	-0.0667
charismatic	0.5
charitable	0.6
charming	0.7
cheap	0.4
cheerful	0.4
cheery	0.7
cheesiest	-0.4
cheesy	-0.5
chicken	-0.6
childish	-0.2
chilling	-0.5
chilly	-0.6
chitchat	-0.2
choppy	-0.2
churning	-0.5
civilized	0.4
classic	0.1667
classy	0.1
claustrophobic	-0.75
clean	0.3667
cleanly	0.3
clear	0.1
clever	0.1667
closed	-0.1
cloudless	0.1
cluelessness	-0.1
clumsy	-0.3
cocky	-0.2
coherent	0.5
cold	-0.6
collectible	-0.5
colorful	0.3
colossal	0.3
coma	-0.1
comfortable	0.4
comic	0.25
comical	0.5
commercialism	-0.1
common	-0.3
compelling	0.3
competent	0.5
complained	-0.3
complaint	-0.3
complete	0.1
complex	-0.3
complicated	-0.5
complimentary	0.3
comprehensible	0.4
conceivable	0.1
concise	0.1
concrete	0.15
confident	0.5
confirmed	0.4
confused	-0.4
confusing	-0.3
conscious	0.1
consecrated	0.2
considerable	0.1
consistent	0.25
consummate	0.95
contemporary	0.1667
contestable	-0.4
contingent	-0.1
contrived	-0.5
controversial	0.55
conventional	-0.1429
convex	0.2
convincing	0.5
cool	0.35
coriaceous	-0.3
corpulent	-0.5
corrupt	-0.5
corruptible	-0.6
courteous	0.6
cow	-0.1333
cozy	-0.2
crafty	0.4
crap	-0.8
crazy	-0.6
creative	0.5
credible	0.4
creepy	-0.5
criminal	-0.4
crisp	0.25
cruddy	-0.9
crude	-0.7
cruel	-1.0
crushed	-0.1
crushing	0.4
crying	-0.2
cultural	0.1
curious	-0.1
cushy	0.9
cute	0.5
cutting	-0.6
cynical	-0.6
dainty	0.9
dangerous	-0.6
dark	-0.15
dazed	-0.5
dazzling	0.75
dead	-0.2
deadly	-0.8333
deadpan	-0.55
debauched	-0.8
decent	0.1667
decreased	-0.4
defecates	-0.1
defenseless	-0.4
deficient	-0.4
deft	0.6
delicate	-0.3
delicious	1.0
delighted	0.7
delightful	1.0
deluxe	0.6
deplorable	-0.6
depress	-0.0667
depressing	-0.6
deserving	0.6
desperate	-0.6
destroy	-0.2
destroying	-0.2
destructive	-0.6
detailed	0.4
devastating	-1.0
developed	0.1
devoid	-0.1
dialectal	-0.2
diaphanous	-0.2
didactic	-0.5
difficult	-0.5
diffident	-0.2
dim	0.1
direct	0.1
dirty	-0.6
disabled	-0.2
disappointed	-0.75
disappointing	-0.6
disappointment	-0.6
disastrous	-0.7
disbelieving	-0.1
discourteous	-0.65
diseased	-0.6
disgusted	-1.0
disgusting	-1.0
dishonest	-0.3
disliked	-0.2
dispossessed	-0.1
distant	-0.1
distasteful	-0.5
distinct	0.3
distraught	-0.6
disturbing	-0.5
doubtful	-0.8
dowdy	-0.5
down	-0.1556
drag	-0.1
dramatic	-0.4333
dreadful	-1.0
dried	-0.2
drowned	-0.1
drunk	-0.5
dry	-0.0667
dudsville	-0.2
due	-0.125
duh	-0.3
duhhh	-0.5
duhhhh	-0.5
dull	-0.2917
dulls	-0.1
dumb	-0.375
dusty	-0.4
duuuh	-0.5
early	0.1
easy	0.4333
ecological	0.4
economic	0.2
economical	0.3
edgy	-0.3
educational	0.25
eerie	-0.5
effective	0.6
effing	-0.5
egoistic	-0.8
elaborate	0.5
elect	0.8
elegant	0.5
elementary	0.3
empirical	0.1
empty	-0.1
endearing	0.5
endless	-0.125
energetic	0.5
engaging	0.4
engrossing	0.6
enigmatic	0.1
enjoy	0.4
enjoyable	0.5
enjoyed	0.5
enjoying	0.5
enlightening	0.3
entertaining	0.5
enthusiastic	0.6
epic	0.1
erotic	0.7
erroneous	-0.5
erudite	0.1
ethical	0.2
everyday	-0.2
evident	0.25
evil	-1.0
exact	0.25
exaggerated	-0.5
excellent	1.0
exceptional	0.6667
excessive	-0.25
excited	0.375
exciting	0.3
excruciatingly	-0.1
excuse	-0.0333
exhausted	-0.4
exhausting	-0.4
exhilarating	0.7
exotic	0.5
expected	-0.1
expensive	-0.5
experienced	0.8
experimental	0.1
exploitative	-0.3
expressive	0.8
exquisite	1.0
extinct	-0.4
extraordinary	0.3333
extreme	-0.125
exuberant	0.05
fabled	0.7
fabulous	0.4
fail	-0.5
failed	-0.5
fails	-0.5
failure	-0.3167
faint	-0.5
fair	0.7
fake	-0.5
false	-0.4
familiar	0.375
famous	0.5
fanatic	-0.3
fantastic	0.4
far	0.1
farce	-0.4
farcical	-0.4
fascinating	0.7
fast	0.2
fatty	-0.2
faultless	1.0
favored	0.8
favorite	0.5
fearful	-0.9
feeble	-0.5
felicitous	0.7
feverish	-0.1
few	-0.2
fiendish	-0.6
fiftieth	0.1
filled	0.4
filthy	-0.8
fine	0.4167
firm	-0.2
first	0.25
fit	0.4
fitting	0.5
fixed	0.1
flashy	-0.5
flat	-0.025
flawed	-0.5
flawless	1.0
flippant	0.4
fluff	-0.1
fluffy	-0.2
fly	0.8
forced	-0.3
forcible	0.5
foreign	-0.125
forgetful	-0.1
forgettable	-0.5
fortunate	0.4
free	0.4
frequent	0.1
fresh	0.3
friendly	0.375
frightening	-0.5
frigid	-0.9
fringy	0.3
frostbitten	-0.5
frustrated	-0.7
frustrating	-0.4
frustratingly	-0.2
fuck	-0.4
fucked	-0.6
fucking	-0.6
full	0.35
fun	0.3
funny	0.25
furtive	-0.1
game	-0.4
gamechanger	0.3
gargantuan	-0.05
gawky	-0.55
gay	0.4167
general	0.05
gentle	0.2
genuine	0.4
gettable	0.1
gifted	0.5
gimmicky	-0.2
glad	0.5
gloom	-0.1333
gluey	-0.4
godforsaken	-0.4
golden	0.3
good	0.7
goofy	0.5
gorgeous	0.7
gory	-0.5
grand	0.5
grandiloquent	-0.6
gratuitous	-0.5
great	0.8
greater	0.5
greatest	1.0
green	-0.2
grey	-0.05
grief	-0.8
grievous	-0.8
grim	-1.0
gripping	0.5
grotesque	-0.55
grr	-0.7
grrr	-0.7
grrrr	-0.7
grudging	-0.6
gruesome	-1.0
guarded	0.4
guilty	-0.5
haha	0.2
hahaha	0.2
hahahaha	0.2
hahahahaha	0.2
half	-0.1667
handsome	0.5
handy	0.6
haphazard	-0.6
hapless	-0.6
happiness	0.7
happy	0.8
hard	-0.2917
harder	-0.1
harsh	-0.2
hate	-0.8
hated	-0.9
hazardous	0.6
healthy	0.5
heavy	-0.2
heroic	0.7
hidden	-0.1667
high	0.16
higher	0.25
hilarious	0.5
hin)TLX"
    R"TLX(dered	-0.2
hollow	-0.0667
honest	0.6
horrible	-1.0
horrific	-1.0
horrifying	-0.9
hot	0.25
huge	0.4
humble	-0.2
humorous	0.5
hysterical	-1.0
icky	-0.3
iconic	0.5
icy	-0.1
ideal	0.9
identifiable	0.1
idiocy	-0.3
idiot	-0.8
idiotic	-0.6667
idiots	-0.8
ill	-0.5
illegal	-0.5
imaginative	0.6
imbecile	-0.8
imitation	-0.1333
immanent	-0.1
impassive	-0.4
impatient	-0.2
impeccable	0.75
imperceptible	-0.2
implicated	-0.4
important	0.4
impossible	-0.6667
impressed	1.0
impressive	1.0
inapposite	-0.8
inarticulate	-0.1
inauspicious	-0.5
incoherent	-0.2
incomparable	0.4
incompetent	-0.375
inconsistencies	-0.1
inconvenient	-0.6
incorruptible	0.5
incredible	0.9
incurable	-0.5
indecipherable	-0.55
indispensable	0.4
ineluctable	-0.1
inexpedient	-0.5
inexperienced	-0.1
inexplicable	-0.6
inexpressible	0.05
infamous	-0.5
infantile	-0.4
infatuated	-0.2
inflexible	-0.4
infuriating	-0.6
ingenious	0.5
inhumane	-0.9
innocent	0.5
innovative	0.5
insane	-1.0
insecure	-0.5
inspirational	0.5
inspiring	0.5
insulting	-1.0
insultingly	-0.3
intellectual	0.3
intelligent	0.8
intelligentsia	-0.1
intense	0.2
interested	0.25
interesting	0.5
intimate	0.2
intriguing	0.3
inventive	0.5
ironic	0.2
irrelevant	-0.5
irritating	-0.4
jackass	-0.5
jackasses	-0.5
jail	-0.1
jammed	-0.1
joy	0.8
justified	0.4
juvenile	-0.25
killed	-0.2
kind	0.6
lame	-0.5
large	0.2143
late	-0.3
latest	0.5
laugh	0.3
laughable	-0.5
laughed	0.7
lazy	-0.25
leaden	-0.2
least	-0.3
leftist	-0.05
legal	0.2
legendary	1.0
legible	0.2
lenient	0.5
less	-0.1667
liable	-0.1
licentious	0.4
lifelike	0.3
lifelong	-0.1
light	0.4
likable	0.5
liked	0.6
limited	-0.0714
limp	-0.2
linguistic	0.1
literary	0.1
little	-0.1875
live	0.1364
lively	0.6667
lmao	0.6
logical	0.25
lol	0.8
lolol	0.8
lonely	-0.1
long	-0.05
loose	-0.0769
losers	-0.2
loses	-0.3
loud	0.1
lousy	-0.5
lovable	0.5
love	0.5
loved	0.7
lovely	0.5
loving	0.6
loyal	0.3333
lucky	0.3333
lush	0.1
lyric	0.25
mad	-0.625
magic	0.5
magical	0.5
magnificent	1.0
main	0.1667
major	0.0625
maladroit	-0.4667
malevolent	-0.8
mannerly	0.5
manque	0.1
many	0.5
marked	0.1
married	0.25
marvelous	1.0
masculine	0.1
masterful	1.0
mature	0.1
meager	-0.6
mean	-0.3125
meaningful	0.5
meaningless	-0.5
measly	-0.5667
medicative	0.1
mediocre	-0.5
mediocrity	-0.2
melodrama	-0.3
memorable	0.5
menacing	-1.0
mental	-0.1
merciless	-0.7
mere	-0.5
mesmerizing	0.3
mess	-0.15
messy	-0.2
mighty	0.4
mild	0.3333
military	-0.1
mindless	-0.2
minimal	-0.1
minor	-0.05
minus	-0.1
miserable	-1.0
misfire	-0.2
misplaced	-0.2
missing	-0.2
mod	0.2
modern	0.2
modest	0.1
monkey	-0.05
monosyllabic	-0.1
moralizing	-0.3
more	0.5
moron	-0.8
morons	-0.8
most	0.5
motley	0.6
much	0.2
muggy	-0.6
multilateral	0.1
mundane	-0.1667
muzak	-0.05
naive	-0.3
nameless	-0.5
narrow	-0.2
nasty	-1.0
natural	0.1
naturalistic	0.4
naughty	-0.15
nauseated	-0.4
near	0.1
needless	-0.5
negative	-0.3
new	0.1364
nice	0.6
noble	0.6
nonviolent	0.4
normal	0.15
nostalgic	-0.5
notable	0.5
numb	-0.6
obedient	0.4
obsessed	-0.5
obstacles	-0.05
odd	-0.1667
offbeat	-0.5
offers	0.1
ok	0.5
okay	0.5
old	0.1
older	0.1667
oozes	-0.2
optimum	0.7
ordinary	-0.25
original	0.375
orthodox	-0.2
other	-0.125
outdated	-0.4
outraged	-0.9
outrageous	-1.0
outstanding	0.5
overboard	-0.25
overexcited	-0.4
overwhelming	0.5
own	0.6
painful	-0.7
pale	-0.15
parade	-0.24
partial	-0.1
particular	0.1667
passionate	-0.05
past	-0.25
pathetic	-1.0
peaceful	0.25
peaky	0.1
peevish	-0.4
peppery	-0.1
perfect	1.0
perpetually	-0.05
perplexed	0.4
phenomenal	0.5
philosophic	0.2
pinheads	-0.3
pink	-0.1
pity	-0.1
pivotal	0.5
placid	-0.3
plain	-0.2143
platitudes	-0.2
plausible	0.5
pleasant	0.7333
pleased	0.5
pleonastic	-0.5
plod	-0.2
plodding	-0.3
poetic	0.375
pointless	-0.25
polar	-0.0833
poor	-0.4
popular	0.6
positive	0.2273
potent	0.5
powerful	0.3
powerless	-0.5
preachy	-0.2
precious	0.5
precise	0.4
predictable	-0.2
pregnant	0.3333
pretentious	-0.3
pretty	0.25
previous	-0.1667
priceless	1.0
primary	0.4
prissy	-0.3
professional	0.1
profitering	-0.3
profound	0.0833
prolix	-0.6
prominent	0.5
promising	0.2
propaganda	-0.1
proud	0.8
proves	0.3
psychotic	-0.5
pure	0.2143
putative	-0.0667
questionable	-0.5
quick	0.3333
quixotic	0.2
rancorous	-0.8
random	-0.5
rank	-0.8
rare	0.3
raucous	-0.3
raunchy	-0.5
raw	-0.2308
ready	0.2
real	0.2
realistic	0.1667
reasonable	0.2
recognizable	0.25
redeeming	0.5
redoubtable	0.6
redundant	-0.2
refreshing	0.5
regrets	-0.1
regurgitates	-0.3
rehash	-0.05
relevant	0.4
remarkable	0.75
remote	-0.1
repellent	-0.9
repetitive	-0.25
reputable	0.5
resourceful	0.6
respectable	0.5
respectful	0.5
responsible	0.2
retard	-0.9
retarded	-0.8
retards	-0.9
rewarding	0.5
rich	0.375
ridiculous	-0.3333
right	0.2857
rightist	-0.2
riveting	0.5
robotic	-0.1
rofl	0.8
rohypnol	-0.1
rose	0.6
rough	-0.1
roughage	-0.1
round	-0.2
rude	-0.3
ruins	-0.15
ruthless	-1.0
sad	-0.5
sadism	-0.05
safe	0.5
sarcastic	0.1
satisfied	0.5
satisfying	0.5
satisyfing	0.6
scarey	-0.5
scary	-0.5
scathing	-0.6
scum	-0.3
seamless	0.1
seasoned	0.25
sec	-0.1
secondary	-0.3
secondhand	-0.1
secret	-0.4
secure	0.4
seizures	-0.05
selfish	-0.5
sensational	0.6667
sensitive	0.1
sentimental	-0.25
serious	-0.3333
seriously	-0.1
sermon	-0.225
sexual	0.5
sexy	0.5
shady	-0.25
shaky	-0.3333
shallow	-0.3333
sham	-0.2
shapeless	-0.2
sharp	-0.125
shit	-0.2
shocked	-0.7
shocking	-1.0
shoddy	-0.3
showery	-0.2
shrieky	-0.4
shrill	-0.4
shy	-0.5
sick	-0.7143
sickening	-0.9
significant	0.375
silly	-0.5
simplistic	-0.5
sincere	0.5
single	-0.0714
sinister	-0.5
sinks	-0.1
skeptical	-0.5
skilled	0.5
skittish	0.7
slick	-0.25
slight	-0.1667
slipping	-0.1
sloppy	-0.4167
slow	-0.3
small	-0.25
smart	0.2143
smile	0.3
smiled	0.6
smooth	0.4
sober	0.1
social	0.0333
soft	0.1
solicitous	0.3
sophisticated	0.5
sophomoric	-0.2
sorry	-0.5
sound	0.4
sour	-0.1571
soured	-0.3
special	0.3571
spectacular	0.6
spent	-0.1
spirited	0.5
splendid	0.8333
spontaneous	0.6
spoof	-0.1
sprightly	0.4
stabbing	-0.6
stainless	0.2
stale	-0.5
stark	-0.2
startling	-0.5
static	0.5
steadfast	0.4
steady	0.1667
stellar	0.25
stereotyped	-0.1
stereotypical	-0.5
stiff	-0.2143
stinker	-0.5
stinks	-0.6
straight	0.2
straightforward	0.375
strange	-0.05
stretched	-0.05
striking	0.5
strong	0.4333
strutting	-0.3
stumble	-0.05
stunning	0.5
stupid	-0.8
stupidity	-0.6
stylish	0.5
subject	-0.1667
subnormal	-0.6
subtle	-0.3333
succeeds	0.7
success	0.3
successful	0.75
sucker	-0.3
suckers	-0.3
sucks	-0.3
suffers	-0.6
suffocating	-0.5
suitable	0.55
super	0.3333
superb	1.0
superfine	0.4
superior	0.7
supernatural	0.1667
supporting	0.25
supportive	0.5
sure	0.5
surprised	0.1
surprising	0.7
surreal	0.25
sweet	0.35
swill	-0.1
sympathetic	0.5
talented	0.7
tame	-0.225
tasteless	-0.6
tedious	-0.5
tense	-0.3333
terminally	-0.4
terrible	-1.0
terrifying	-1.0
thanks	0.2
thick	-0.3
thin	-0.4
thoughtful	0.4
thrilled	0.6
thrilling	0.25
tidy	0.6
tight	-0.1786
tired	-0.4
tiresome	-0.5
titular	0.1
toilet	-0.0333
toneless	-0.1
top	0.5
touching	0.5
tough	-0.3889
tragic	-0.75
trapped	-0.2
tremendous	0.3333
trendy	0.6
tries	-0.1
trouble	-0.2
troubled	-0.5
true	0.35
truthful	0.5
twisted	-0.5
typical	-0.1667
ugliness	-0.3
ugly	-0.7
unable	-0.5
unadulterated	0.4
unaffected	-0.05
unanswered	-0.1
unappealing	-0.4
unappetizing	-0.8
unashamed	-0.5
unbefitting	-0.6
unbelievable	-0.25
unblemished	0.1
unblinking	0.3
unbranded	-0.1
unchaste	-0.7
uncivil	-0.7333
uncomfortable	-0.5
uncommon	0.8
uncontroversial	0.3
uncooked	-0.1
uncut	-0.5
undeserved	-0.3
undignified	-0.6
unengaging	-0.2
uneven	-0.2
unexcelled	0.5
unexpected	0.1
unexplained	-0.05
unfair	-0.5
unfaithful	-0.6
unfocused	-0.4
unforgettable	0.8
unfortunate	-0.5
unfortunately	-0.1
unfruitful	-0.6
ungraded	-0.4
unhampered	0.6
unhappy	-0.6
unhealthy	-0.4
unhesitating	0.1
unilateral	-0.5
unimportant	-0.4
uninspired	-0.5
unintelligent	-0.65
unique	0.375
unknown	-0.1
unlikely	-0.5
unnecessary	-0.4
unnoticed	-0.2
unoriginal	-0.2
unpaid	0.2
unplayable	-0.4
unpleasant	-0.65
unprecedented	0.6
unpredictable	-0.1667
unprocessed	-0.1
unpropitious	-0.6
unread	0.1
unrealistic	-0.5
unsalted	0.4
unschooled	-0.2
unsettlin)TLX"
    R"TLX(g	-0.5
unstirred	-0.4
unthinkable	-0.05
untraceable	-0.3
unusual	0.2
urinates	-0.1
useful	0.3
useless	-0.5
usual	-0.25
vacuum	-0.0125
vague	-0.5
vapid	-0.3
very	0.2
vibrant	0.1667
vicious	-1.0
victim	-0.075
violent	-0.8
vital	0.1
vivid	0.125
vocational	0.3
vulgar	-0.7
vulnerable	-0.5
wacky	0.5
wan	-0.2
wants	0.2
warm	0.6
wary	-0.5
waste	-0.2
wasted	-0.2
wastes	-0.2
weak	-0.375
wealthy	0.5
weird	-0.5
welcome	0.8
wet	-0.1
whaddupwitdat	-0.1
whimsical	-0.5
whole	0.2
wide	-0.1
wild	0.1
willing	0.25
win	0.8
winning	0.5
wins	0.3
wise	0.7
witty	0.5
wonderful	1.0
wonky	-0.3
workmanlike	0.5
worse	-0.4
worst	-1.0
worth	0.3
worthless	-0.8
worthwhile	0.5
worthy	0.3333
wow	0.1
wrong	-0.5
wtf	-0.5
yaaawwnnnn	-0.5
yarn	-0.1
young	0.1
youngish	0.4
)TLX";

}  // namespace trustlens::detail
